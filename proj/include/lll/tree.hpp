#ifndef LLL_TREE_HPP
#define LLL_TREE_HPP

#include <map>
#include <vector>

#include "lll/graph.hpp"
#include "lll/shearer.hpp"

namespace lll {

// rooted view of a tree-shaped interaction bipartite graph.
// vertices are addressed as (side, index); the root is always a right vertex:
// if a left root is requested, a fresh right vertex is attached above it.
struct RootedTreeView {
    BipartiteGraph graph;
    int root = 0;                                 // right vertex
    std::vector<std::vector<int>> left_children;  // C_i: right children of left i
    std::vector<std::vector<int>> right_children; // C_j: left children of right j
    std::vector<int> right_postorder;             // right vertices, children before parents

    static RootedTreeView make(const BipartiteGraph& g, int root, bool root_is_left = false);
};

struct TreeBoundSolution {
    bool feasible = false;
    std::vector<Rational> q;  // per right vertex (index 1..n); rational variant
    std::vector<Int> q_int;   // integer variant of the recursion
    int failing_vertex = 0;   // right vertex where the constraint first fails, 0 if feasible
};

TreeBoundSolution tree_fixed_point(const RootedTreeView& t, const ProbabilityVector& r);

TreeBoundSolution tree_dim_recursion(const RootedTreeView& t, const ProbabilityVector& r,
                                     const std::map<int, Int>& dims);

// (1/(t-1)) * (k-1)^(k-1) / k^k
Rational regular_tree_threshold(int t, int k);

Rational tree_boundary_scale(const RootedTreeView& t, const ProbabilityVector& r,
                             const Rational& tol);

}  // namespace lll

#endif
