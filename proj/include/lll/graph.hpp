#ifndef LLL_GRAPH_HPP
#define LLL_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lll/rational.hpp"
#include <nlohmann/json_fwd.hpp>

namespace lll {

// interaction bipartite graph: left = events/Hamiltonians, right = variables/qudits.
// all indices 1-based to match the JSON format and the usual notation.
struct BipartiteGraph {
    int m = 0;
    int n = 0;
    std::set<std::pair<int, int>> edges;  // (left,right)

    BipartiteGraph() = default;
    BipartiteGraph(int m_, int n_, std::set<std::pair<int, int>> e);

    const std::vector<int>& left_nbrs(int i) const { return lnbr_.at(i); }    // N(i) on right side
    const std::vector<int>& right_nbrs(int j) const { return rnbr_.at(j); }   // N(j) on left side
    int left_degree(int i) const { return static_cast<int>(lnbr_.at(i).size()); }
    int right_degree(int j) const { return static_cast<int>(rnbr_.at(j).size()); }
    bool has_edge(int i, int j) const { return edges.count({i, j}) > 0; }

    bool operator==(const BipartiteGraph& o) const {
        return m == o.m && n == o.n && edges == o.edges;
    }

  private:
    std::vector<std::vector<int>> lnbr_, rnbr_;
};

// dependency graph on [m]; adjacency kept as bitmasks (bit k-1 <-> vertex k)
struct DepGraph {
    int m = 0;
    std::set<std::pair<int, int>> edges;  // i<j

    DepGraph() = default;
    DepGraph(int m_, std::set<std::pair<int, int>> e);

    uint32_t adj_mask(int i) const { return adj_.at(i); }               // Gamma_i
    uint32_t adj_plus_mask(int i) const { return adj_.at(i) | bit(i); } // Gamma_i^+
    std::vector<int> gamma(int i) const;
    bool adjacent(int i, int j) const { return (adj_.at(i) >> (j - 1)) & 1u; }
    int degree(int i) const;
    int max_degree() const;
    // shortest-path length, -1 if disconnected
    int distance(int i, int j) const;
    uint32_t full_mask() const { return m == 32 ? 0xffffffffu : ((1u << m) - 1); }
    bool connected_mask(uint32_t s) const;  // is the induced subgraph on s connected
    bool operator==(const DepGraph& o) const { return m == o.m && edges == o.edges; }

    static uint32_t bit(int i) { return 1u << (i - 1); }

  private:
    std::vector<uint32_t> adj_;
};

DepGraph base_graph(const BipartiteGraph& g);

// induced subgraph on a left-vertex set; right vertices are all kept
BipartiteGraph induced_subgraph(const BipartiteGraph& g, const std::vector<int>& left);
DepGraph induced_subgraph(const DepGraph& g, const std::vector<int>& verts);

bool is_solitary(const BipartiteGraph& g, int j);

struct CyclicSubgraph {
    std::vector<int> left;  // left vertices, sorted
    int length = 0;
    bool two_discrete = false;
};

// left sets whose contained graph is an l-cyclic bipartite graph
std::vector<CyclicSubgraph> find_cyclic_subgraphs(const BipartiteGraph& g, int max_len = 16);

enum class ReductionOp {
    delete_r_leaf,
    duplicate_l_vertex,
    duplicate_r_vertex,
    delete_edge,
    delete_l_vertex,
    delete_l_leaf,
    inv_delete_r_leaf,
    inv_duplicate_l_vertex,
    inv_duplicate_r_vertex,
    inv_delete_edge,
    inv_delete_l_vertex,
    inv_delete_l_leaf,
};

ReductionOp parse_reduction_op(const std::string& name);

struct ReductionResult {
    BipartiteGraph graph;
    // old index -> new index, 0 if removed; identity-extended for additions
    std::vector<int> left_map, right_map;
};

// args: vertex/edge indices; for additions, args lists the new vertex's neighbors
ReductionResult apply_reduction(const BipartiteGraph& g, ReductionOp op,
                                const std::vector<int>& args);

enum class GapVerdict { gapless, gapful, unknown };

struct GapDecision {
    GapVerdict verdict;
    std::string reason;
};

GapDecision gap_decision(const BipartiteGraph& g, int max_cycle_len = 16);

nlohmann::json graph_to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const nlohmann::json& j);

}  // namespace lll

#endif
