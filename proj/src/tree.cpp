#include "lll/tree.hpp"

#include <algorithm>
#include <queue>

namespace lll {

RootedTreeView RootedTreeView::make(const BipartiteGraph& g_in, int root, bool root_is_left) {
    BipartiteGraph g = g_in;
    if (root_is_left) {
        // normalize: hang a fresh right root above the requested left vertex
        auto e = g.edges;
        if (root < 1 || root > g.m)
            throw domain_error("bad_vertex", "left root out of range");
        e.insert({root, g.n + 1});
        g = BipartiteGraph(g.m, g.n + 1, std::move(e));
        root = g.n;
    }
    if (root < 1 || root > g.n)
        throw domain_error("bad_vertex", "root must be a right vertex");
    if (static_cast<int>(g.edges.size()) != g.m + g.n - 1)
        throw domain_error("not_a_tree", "edge count != m + n - 1");

    RootedTreeView t;
    t.graph = g;
    t.root = root;
    t.left_children.assign(g.m + 1, {});
    t.right_children.assign(g.n + 1, {});
    // BFS from the root, alternating sides
    std::vector<char> lseen(g.m + 1, 0), rseen(g.n + 1, 0);
    std::vector<int> rparentless;
    std::queue<std::pair<char, int>> q;  // ('R', j) or ('L', i)
    rseen[root] = 1;
    q.push({'R', root});
    std::vector<int> order_right;
    int visited = 0;
    while (!q.empty()) {
        auto [side, v] = q.front();
        q.pop();
        ++visited;
        if (side == 'R') {
            order_right.push_back(v);
            for (int i : g.right_nbrs(v))
                if (!lseen[i]) {
                    lseen[i] = 1;
                    t.right_children[v].push_back(i);
                    q.push({'L', i});
                }
        } else {
            for (int j : g.left_nbrs(v))
                if (!rseen[j]) {
                    rseen[j] = 1;
                    t.left_children[v].push_back(j);
                    q.push({'R', j});
                }
        }
    }
    if (visited != g.m + g.n)
        throw domain_error("not_a_tree", "graph is not connected");
    t.right_postorder.assign(order_right.rbegin(), order_right.rend());
    return t;
}

TreeBoundSolution tree_fixed_point(const RootedTreeView& t, const ProbabilityVector& r) {
    r.validate(t.graph.m);
    TreeBoundSolution sol;
    sol.q.assign(t.graph.n + 1, Rational(0));
    for (int j : t.right_postorder) {
        Rational qj = 0;
        for (int i : t.right_children[j]) {
            Rational term = r.at(i);
            for (int k : t.left_children[i]) {
                Rational denom = 1 - sol.q[k];
                // children were processed first; q_k < 1 or we would have stopped
                term /= denom;
            }
            qj += term;
        }
        sol.q[j] = qj;
        if (qj >= 1) {
            sol.feasible = false;
            sol.failing_vertex = j;
            return sol;
        }
    }
    sol.feasible = true;
    return sol;
}

TreeBoundSolution tree_dim_recursion(const RootedTreeView& t, const ProbabilityVector& r,
                                     const std::map<int, Int>& dims) {
    r.validate(t.graph.m);
    std::vector<Int> d(t.graph.n + 1, 1);
    for (auto& [j, dj] : dims) {
        if (j < 1 || j > t.graph.n) throw domain_error("bad_vertex", "dim index out of range");
        if (dj < 1) throw domain_error("bad_argument", "dimensions must be >= 1");
        d[j] = dj;
    }
    TreeBoundSolution sol;
    sol.q_int.assign(t.graph.n + 1, Int(0));
    for (int j : t.right_postorder) {
        Int qj = 0;
        if (!t.right_children[j].empty()) {
            for (int i : t.right_children[j]) {
                Rational term = r.at(i) * Rational(d[j]);
                for (int k : t.left_children[i])
                    term *= Rational(d[k]) / Rational(d[k] - sol.q_int[k]);
                // exact rational floor
                Int fl = numerator(term) / denominator(term);
                qj += fl;
            }
        }
        sol.q_int[j] = qj;
        if (qj >= d[j]) {
            sol.feasible = false;
            sol.failing_vertex = j;
            return sol;
        }
    }
    sol.feasible = true;
    return sol;
}

Rational regular_tree_threshold(int t, int k) {
    if (t < 2 || k < 2) throw domain_error("bad_argument", "need t >= 2 and k >= 2");
    Rational num = pow_rational(Rational(k - 1), k - 1);
    Rational den = pow_rational(Rational(k), k);
    return Rational(1, t - 1) * num / den;
}

Rational tree_boundary_scale(const RootedTreeView& t, const ProbabilityVector& r,
                             const Rational& tol) {
    r.validate(t.graph.m);
    if (tol <= 0) throw domain_error("bad_tolerance", "tol must be positive");
    Rational lambda_max;
    bool first = true;
    for (const auto& x : r.entries) {
        Rational lim = 1 / x;
        if (first || lim < lambda_max) lambda_max = lim;
        first = false;
    }
    auto feasible_at = [&](const Rational& lam) {
        std::vector<Rational> e;
        e.reserve(r.entries.size());
        for (const auto& x : r.entries) e.push_back(lam * x);
        return tree_fixed_point(t, ProbabilityVector(std::move(e))).feasible;
    };
    if (feasible_at(lambda_max))
        throw domain_error("ray_exits",
                           "lambda*r leaves (0,1]^m before reaching the boundary");
    Rational lo = 0, hi = lambda_max;
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        if (feasible_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace lll
