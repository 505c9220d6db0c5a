#include "lll/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include <nlohmann/json.hpp>

namespace lll {

BipartiteGraph::BipartiteGraph(int m_, int n_, std::set<std::pair<int, int>> e)
    : m(m_), n(n_), edges(std::move(e)) {
    if (m < 0 || n < 0) throw domain_error("bad_graph", "negative vertex count");
    lnbr_.assign(m + 1, {});
    rnbr_.assign(n + 1, {});
    for (auto& [i, j] : edges) {
        if (i < 1 || i > m || j < 1 || j > n)
            throw domain_error("bad_graph", "edge (" + std::to_string(i) + "," +
                                                std::to_string(j) + ") out of range");
        lnbr_[i].push_back(j);
        rnbr_[j].push_back(i);
    }
}

DepGraph::DepGraph(int m_, std::set<std::pair<int, int>> e) : m(m_), edges() {
    if (m < 0 || m > 32) throw domain_error("bad_graph", "dependency graph size out of range");
    adj_.assign(m + 1, 0);
    for (auto [a, b] : e) {
        if (a == b) throw domain_error("bad_graph", "self loop");
        if (a > b) std::swap(a, b);
        if (a < 1 || b > m) throw domain_error("bad_graph", "edge out of range");
        edges.insert({a, b});
        adj_[a] |= bit(b);
        adj_[b] |= bit(a);
    }
}

std::vector<int> DepGraph::gamma(int i) const {
    std::vector<int> out;
    uint32_t a = adj_mask(i);
    for (int v = 1; v <= m; ++v)
        if (a & bit(v)) out.push_back(v);
    return out;
}

int DepGraph::degree(int i) const {
#ifdef __GNUC__
    return __builtin_popcount(adj_mask(i));
#else
    uint32_t a = adj_mask(i);
    int c = 0;
    while (a) { a &= a - 1; ++c; }
    return c;
#endif
}

int DepGraph::max_degree() const {
    int d = 0;
    for (int i = 1; i <= m; ++i) d = std::max(d, degree(i));
    return d;
}

int DepGraph::distance(int i, int j) const {
    if (i < 1 || i > m || j < 1 || j > m)
        throw domain_error("bad_vertex", "vertex index out of range");
    if (i == j) return 0;
    std::vector<int> dist(m + 1, -1);
    std::queue<int> q;
    dist[i] = 0;
    q.push(i);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w = 1; w <= m; ++w)
            if (adjacent(v, w) && dist[w] < 0) {
                dist[w] = dist[v] + 1;
                if (w == j) return dist[w];
                q.push(w);
            }
    }
    return -1;
}

bool DepGraph::connected_mask(uint32_t s) const {
    if (s == 0) return true;
    uint32_t seen = s & (~s + 1);  // lowest bit
    for (;;) {
        uint32_t frontier = 0;
        uint32_t t = seen;
        while (t) {
            int v = __builtin_ctz(t) + 1;
            t &= t - 1;
            frontier |= adj_mask(v);
        }
        uint32_t grown = seen | (frontier & s);
        if (grown == seen) break;
        seen = grown;
    }
    return seen == s;
}

DepGraph base_graph(const BipartiteGraph& g) {
    std::set<std::pair<int, int>> e;
    for (int j = 1; j <= g.n; ++j) {
        const auto& nb = g.right_nbrs(j);
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                int x = nb[a], y = nb[b];
                if (x > y) std::swap(x, y);
                if (x != y) e.insert({x, y});
            }
    }
    return DepGraph(g.m, std::move(e));
}

BipartiteGraph induced_subgraph(const BipartiteGraph& g, const std::vector<int>& left) {
    std::vector<int> s(left);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::map<int, int> relabel;
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > g.m)
            throw domain_error("bad_vertex", "left vertex out of range");
        relabel[s[k]] = static_cast<int>(k) + 1;
    }
    std::set<std::pair<int, int>> e;
    for (auto& [i, j] : g.edges)
        if (relabel.count(i)) e.insert({relabel[i], j});
    return BipartiteGraph(static_cast<int>(s.size()), g.n, std::move(e));
}

DepGraph induced_subgraph(const DepGraph& g, const std::vector<int>& verts) {
    std::vector<int> s(verts);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::map<int, int> relabel;
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > g.m)
            throw domain_error("bad_vertex", "vertex out of range");
        relabel[s[k]] = static_cast<int>(k) + 1;
    }
    std::set<std::pair<int, int>> e;
    for (auto& [a, b] : g.edges)
        if (relabel.count(a) && relabel.count(b)) e.insert({relabel[a], relabel[b]});
    return DepGraph(static_cast<int>(s.size()), std::move(e));
}

bool is_solitary(const BipartiteGraph& g, int j) {
    if (j < 1 || j > g.n) throw domain_error("bad_vertex", "right vertex out of range");
    const auto& nb = g.right_nbrs(j);
    for (size_t a = 0; a < nb.size(); ++a)
        for (size_t b = a + 1; b < nb.size(); ++b) {
            // shared right vertices of the pair must be exactly {j}
            for (int x : g.left_nbrs(nb[a]))
                if (x != j && g.has_edge(nb[b], x)) return false;
        }
    return true;
}

namespace {

// masks over left vertices whose induced base subgraph is a chordless cycle
std::vector<uint32_t> induced_cycles(const DepGraph& d, int min_len, int max_len) {
    if (d.m > 26)
        throw domain_error("cap_exceeded", "cycle search needs m <= 26");
    std::vector<uint32_t> out;
    uint32_t full = d.full_mask();
    for (uint32_t s = 1; s <= full; ++s) {
        int pc = __builtin_popcount(s);
        if (pc < min_len || pc > max_len) continue;
        bool ok = true;
        uint32_t t = s;
        while (t) {
            int v = __builtin_ctz(t) + 1;
            t &= t - 1;
            if (__builtin_popcount(d.adj_mask(v) & s) != 2) { ok = false; break; }
        }
        if (ok && d.connected_mask(s)) out.push_back(s);
    }
    return out;
}

std::vector<int> mask_to_verts(uint32_t s) {
    std::vector<int> v;
    while (s) {
        v.push_back(__builtin_ctz(s) + 1);
        s &= s - 1;
    }
    return v;
}

}  // namespace

std::vector<CyclicSubgraph> find_cyclic_subgraphs(const BipartiteGraph& g, int max_len) {
    DepGraph d = base_graph(g);
    std::vector<CyclicSubgraph> out;
    for (uint32_t s : induced_cycles(d, 3, max_len)) {
        std::vector<int> left = mask_to_verts(s);
        int l = static_cast<int>(left.size());
        if (l == 3) {
            // 3-cyclic needs no right vertex adjacent to all three left vertices
            bool shared_all = false;
            for (int j : g.left_nbrs(left[0])) {
                if (g.has_edge(left[1], j) && g.has_edge(left[2], j)) { shared_all = true; break; }
            }
            if (shared_all) continue;
        }
        bool two_discrete = true;
        for (int i : left)
            for (int j : g.left_nbrs(i))
                if (g.right_degree(j) > 2) two_discrete = false;
        out.push_back({left, l, two_discrete});
    }
    return out;
}

ReductionOp parse_reduction_op(const std::string& name) {
    static const std::map<std::string, ReductionOp> tab = {
        {"delete_r_leaf", ReductionOp::delete_r_leaf},
        {"duplicate_l_vertex", ReductionOp::duplicate_l_vertex},
        {"duplicate_r_vertex", ReductionOp::duplicate_r_vertex},
        {"delete_edge", ReductionOp::delete_edge},
        {"delete_l_vertex", ReductionOp::delete_l_vertex},
        {"delete_l_leaf", ReductionOp::delete_l_leaf},
        {"inv_delete_r_leaf", ReductionOp::inv_delete_r_leaf},
        {"inv_duplicate_l_vertex", ReductionOp::inv_duplicate_l_vertex},
        {"inv_duplicate_r_vertex", ReductionOp::inv_duplicate_r_vertex},
        {"inv_delete_edge", ReductionOp::inv_delete_edge},
        {"inv_delete_l_vertex", ReductionOp::inv_delete_l_vertex},
        {"inv_delete_l_leaf", ReductionOp::inv_delete_l_leaf},
    };
    auto it = tab.find(name);
    if (it == tab.end()) throw domain_error("bad_reduction", "unknown reduction op: " + name);
    return it->second;
}

namespace {

ReductionResult remove_left(const BipartiteGraph& g, int i) {
    std::set<std::pair<int, int>> e;
    ReductionResult res;
    res.left_map.assign(g.m + 1, 0);
    res.right_map.assign(g.n + 1, 0);
    int next = 1;
    for (int v = 1; v <= g.m; ++v)
        if (v != i) res.left_map[v] = next++;
    for (int j = 1; j <= g.n; ++j) res.right_map[j] = j;
    for (auto& [a, b] : g.edges)
        if (a != i) e.insert({res.left_map[a], b});
    res.graph = BipartiteGraph(g.m - 1, g.n, std::move(e));
    return res;
}

ReductionResult remove_right(const BipartiteGraph& g, int j) {
    std::set<std::pair<int, int>> e;
    ReductionResult res;
    res.left_map.assign(g.m + 1, 0);
    res.right_map.assign(g.n + 1, 0);
    for (int v = 1; v <= g.m; ++v) res.left_map[v] = v;
    int next = 1;
    for (int w = 1; w <= g.n; ++w)
        if (w != j) res.right_map[w] = next++;
    for (auto& [a, b] : g.edges)
        if (b != j) e.insert({a, res.right_map[b]});
    res.graph = BipartiteGraph(g.m, g.n - 1, std::move(e));
    return res;
}

ReductionResult identity_maps(BipartiteGraph g, int old_m, int old_n) {
    ReductionResult res;
    res.left_map.assign(old_m + 1, 0);
    res.right_map.assign(old_n + 1, 0);
    for (int v = 1; v <= old_m; ++v) res.left_map[v] = v;
    for (int w = 1; w <= old_n; ++w) res.right_map[w] = w;
    res.graph = std::move(g);
    return res;
}

}  // namespace

ReductionResult apply_reduction(const BipartiteGraph& g, ReductionOp op,
                                const std::vector<int>& args) {
    auto need = [&](size_t k) {
        if (args.size() < k)
            throw domain_error("bad_reduction", "missing reduction arguments");
    };
    auto check_left = [&](int i) {
        if (i < 1 || i > g.m) throw domain_error("bad_vertex", "left vertex out of range");
    };
    auto check_right = [&](int j) {
        if (j < 1 || j > g.n) throw domain_error("bad_vertex", "right vertex out of range");
    };
    switch (op) {
        case ReductionOp::delete_r_leaf: {
            need(1);
            int j = args[0];
            check_right(j);
            if (g.right_degree(j) > 1)
                throw domain_error("precondition", "delete_r_leaf: right vertex has degree > 1");
            return remove_right(g, j);
        }
        case ReductionOp::delete_l_leaf: {
            need(1);
            int i = args[0];
            check_left(i);
            if (g.left_degree(i) > 1)
                throw domain_error("precondition", "delete_l_leaf: left vertex has degree > 1");
            return remove_left(g, i);
        }
        case ReductionOp::delete_l_vertex: {
            need(1);
            int i = args[0];
            check_left(i);
            return remove_left(g, i);
        }
        case ReductionOp::duplicate_l_vertex: {
            need(1);
            int i = args[0];
            check_left(i);
            auto e = g.edges;
            for (int j : g.left_nbrs(i)) e.insert({g.m + 1, j});
            return identity_maps(BipartiteGraph(g.m + 1, g.n, std::move(e)), g.m, g.n);
        }
        case ReductionOp::duplicate_r_vertex: {
            need(1);
            int j = args[0];
            check_right(j);
            std::vector<int> nbrs(args.begin() + 1, args.end());
            if (nbrs.empty()) nbrs = g.right_nbrs(j);
            for (int i : nbrs)
                if (!g.has_edge(i, j))
                    throw domain_error("precondition",
                                       "duplicate_r_vertex: new neighborhood not a subset");
            auto e = g.edges;
            for (int i : nbrs) e.insert({i, g.n + 1});
            return identity_maps(BipartiteGraph(g.m, g.n + 1, std::move(e)), g.m, g.n);
        }
        case ReductionOp::delete_edge: {
            need(2);
            int i = args[0], j = args[1];
            check_left(i);
            check_right(j);
            if (!g.has_edge(i, j)) throw domain_error("precondition", "delete_edge: no such edge");
            auto e = g.edges;
            e.erase({i, j});
            BipartiteGraph h(g.m, g.n, std::move(e));
            if (!(base_graph(h) == base_graph(g)))
                throw domain_error("precondition", "delete_edge: base graph changes");
            return identity_maps(std::move(h), g.m, g.n);
        }
        case ReductionOp::inv_delete_edge: {
            need(2);
            int i = args[0], j = args[1];
            check_left(i);
            check_right(j);
            if (g.has_edge(i, j))
                throw domain_error("precondition", "inv_delete_edge: edge already present");
            auto e = g.edges;
            e.insert({i, j});
            BipartiteGraph h(g.m, g.n, std::move(e));
            if (!(base_graph(h) == base_graph(g)))
                throw domain_error("precondition", "inv_delete_edge: base graph changes");
            return identity_maps(std::move(h), g.m, g.n);
        }
        case ReductionOp::inv_delete_r_leaf: {
            auto e = g.edges;
            if (!args.empty()) {
                check_left(args[0]);
                e.insert({args[0], g.n + 1});
            }
            return identity_maps(BipartiteGraph(g.m, g.n + 1, std::move(e)), g.m, g.n);
        }
        case ReductionOp::inv_delete_l_leaf: {
            auto e = g.edges;
            if (!args.empty()) {
                check_right(args[0]);
                e.insert({g.m + 1, args[0]});
            }
            return identity_maps(BipartiteGraph(g.m + 1, g.n, std::move(e)), g.m, g.n);
        }
        case ReductionOp::inv_delete_l_vertex: {
            auto e = g.edges;
            for (int j : args) {
                check_right(j);
                e.insert({g.m + 1, j});
            }
            return identity_maps(BipartiteGraph(g.m + 1, g.n, std::move(e)), g.m, g.n);
        }
        case ReductionOp::inv_duplicate_l_vertex: {
            need(1);
            int i = args[0];
            check_left(i);
            auto ni = g.left_nbrs(i);
            std::vector<int> a(ni);
            std::sort(a.begin(), a.end());
            bool twin = false;
            for (int v = 1; v <= g.m && !twin; ++v) {
                if (v == i) continue;
                auto nv = g.left_nbrs(v);
                std::vector<int> b(nv);
                std::sort(b.begin(), b.end());
                twin = a == b;
            }
            if (!twin)
                throw domain_error("precondition",
                                   "inv_duplicate_l_vertex: no twin left vertex remains");
            return remove_left(g, i);
        }
        case ReductionOp::inv_duplicate_r_vertex: {
            need(1);
            int j = args[0];
            check_right(j);
            bool covered = false;
            for (int w = 1; w <= g.n && !covered; ++w) {
                if (w == j) continue;
                bool sub = true;
                for (int i : g.right_nbrs(j))
                    if (!g.has_edge(i, w)) { sub = false; break; }
                covered = sub;
            }
            if (!covered)
                throw domain_error("precondition",
                                   "inv_duplicate_r_vertex: no right vertex covers it");
            return remove_right(g, j);
        }
    }
    throw domain_error("bad_reduction", "unhandled reduction op");
}

GapDecision gap_decision(const BipartiteGraph& g, int max_cycle_len) {
    // iterated leaf deletion: the graph reduces to a (set of) trivial pieces iff it is a forest
    std::vector<char> lgone(g.m + 1, 0), rgone(g.n + 1, 0);
    bool changed = true;
    auto ldeg = [&](int i) {
        int d = 0;
        for (int j : g.left_nbrs(i))
            if (!rgone[j]) ++d;
        return d;
    };
    auto rdeg = [&](int j) {
        int d = 0;
        for (int i : g.right_nbrs(j))
            if (!lgone[i]) ++d;
        return d;
    };
    while (changed) {
        changed = false;
        for (int i = 1; i <= g.m; ++i)
            if (!lgone[i] && ldeg(i) <= 1) { lgone[i] = 1; changed = true; }
        for (int j = 1; j <= g.n; ++j)
            if (!rgone[j] && rdeg(j) <= 1) { rgone[j] = 1; changed = true; }
    }
    bool empty_core = true;
    for (int i = 1; i <= g.m && empty_core; ++i)
        if (!lgone[i]) empty_core = false;
    for (int j = 1; j <= g.n && empty_core; ++j)
        if (!rgone[j]) empty_core = false;
    if (empty_core) return {GapVerdict::gapless, "reduces to a tree under leaf deletions"};

    auto cyc = find_cyclic_subgraphs(g, max_cycle_len);
    if (!cyc.empty())
        return {GapVerdict::gapful, "contains a cyclic bipartite subgraph"};
    DepGraph d = base_graph(g);
    for (uint32_t s : induced_cycles(d, 4, std::min(max_cycle_len, d.m)))
        if (s)  // any induced cycle of length >= 4 makes the base graph non-chordal
            return {GapVerdict::gapful, "base graph has an induced cycle of length >= 4"};
    return {GapVerdict::unknown, "base graph has only 3-cliques; classification open"};
}

nlohmann::json graph_to_json(const BipartiteGraph& g) {
    nlohmann::json e = nlohmann::json::array();
    for (auto& [i, j] : g.edges) e.push_back({i, j});
    return {{"m", g.m}, {"n", g.n}, {"edges", e}};
}

BipartiteGraph graph_from_json(const nlohmann::json& j) {
    if (!j.contains("m") || !j.contains("n") || !j.contains("edges"))
        throw domain_error("bad_graph", "graph JSON needs m, n, edges");
    std::set<std::pair<int, int>> e;
    for (auto& ed : j.at("edges")) {
        if (!ed.is_array() || ed.size() != 2)
            throw domain_error("bad_graph", "edge must be a [left,right] pair");
        auto p = std::make_pair(ed[0].get<int>(), ed[1].get<int>());
        if (e.count(p)) throw domain_error("bad_graph", "duplicate edge");
        e.insert(p);
    }
    return BipartiteGraph(j.at("m").get<int>(), j.at("n").get<int>(), std::move(e));
}

}  // namespace lll
