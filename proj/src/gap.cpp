#include "lll/gap.hpp"

#include <algorithm>
#include <queue>

namespace lll {

void TransferLayers::validate() const {
    if (p <= 0 || p > 1) throw domain_error("bad_probability", "p must lie in (0,1]");
    if (q1 <= 0 || q1 > p) throw domain_error("bad_argument", "need 0 < q1 <= p");
    for (long s : layer_sizes)
        if (s < 0) throw domain_error("bad_argument", "layer sizes must be nonnegative");
}

Rational tau(int d, int l, const Rational& p, const Rational& q) {
    if (d < 2 || l < 0) throw domain_error("bad_argument", "need d >= 2 and l >= 0");
    if (p <= 0 || p > 1 || q <= 0 || q > p)
        throw domain_error("bad_argument", "need 0 < q <= p <= 1");
    Rational pl = pow_rational(p, l);
    Rational head = p * pl - pl * Rational(d - 1) * (1 - p);
    Rational tail =
        (1 - p + q) * Rational(d) * (pl - pow_rational(Rational(d - 1) * (1 - p), l));
    Rational denom = head + tail;
    if (denom == 0) throw domain_error("division_by_zero", "tau denominator vanishes");
    return q * head / denom;
}

Rational transfer_bound(const Rational& p, const Rational& q1,
                        const std::vector<long>& layer_sizes) {
    if (p <= 0) throw domain_error("bad_argument", "p must be positive");
    if (q1 > p) throw domain_error("bad_argument", "need q1 <= p");
    Rational sum = 0;
    Rational ratio_pow = 1;  // (1-p)^(k-1)
    Rational p_pow = p;      // p^k
    for (long sz : layer_sizes) {
        sum += (1 - p + q1) * Rational(sz) * ratio_pow / p_pow;
        ratio_pow *= (1 - p);
        p_pow *= p;
    }
    return q1 / (1 + sum);
}

ProbabilityVector element_transfer(const DepGraph& g, const ProbabilityVector& p, int i, int j,
                                   const Rational& q) {
    p.validate(g.m);
    if (i < 1 || i > g.m || j < 1 || j > g.m)
        throw domain_error("bad_vertex", "vertex index out of range");
    if (!g.adjacent(i, j)) throw domain_error("bad_argument", "i must be adjacent to j");
    if (q < 0 || q > p.at(j)) throw domain_error("bad_argument", "need 0 <= q <= p_j");
    ProbabilityVector out = p;
    out.at(j) -= q;
    out.at(i) += q * (1 - p.at(i)) / p.at(j);
    for (const auto& x : out.entries)
        if (x <= 0 || x > 1)
            throw domain_error("range_exceeded", "transferred vector leaves (0,1]^m");
    return out;
}

namespace {

// true iff some shortest i-j path has all vertices except i carrying probability p
bool shortest_path_with_common_p(const DepGraph& g, const ProbabilityVector& pr, int i, int j,
                                 const Rational& p, int dist) {
    // DP over BFS layers from i: reachable[v] = v on a shortest path prefix with common p
    std::vector<int> d(g.m + 1, -1);
    std::queue<int> q;
    d[i] = 0;
    q.push(i);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w = 1; w <= g.m; ++w)
            if (g.adjacent(v, w) && d[w] < 0) {
                d[w] = d[v] + 1;
                q.push(w);
            }
    }
    std::vector<char> ok(g.m + 1, 0);
    ok[i] = 1;
    for (int layer = 1; layer <= dist; ++layer)
        for (int v = 1; v <= g.m; ++v)
            if (d[v] == layer && pr.at(v) == p)
                for (int w = 1; w <= g.m; ++w)
                    if (g.adjacent(v, w) && d[w] == layer - 1 && ok[w]) ok[v] = 1;
    return ok[j] != 0;
}

}  // namespace

ProbabilityVector path_transfer(const DepGraph& g, const ProbabilityVector& p, int i, int j,
                                const Rational& q) {
    p.validate(g.m);
    if (i < 1 || i > g.m || j < 1 || j > g.m)
        throw domain_error("bad_vertex", "vertex index out of range");
    if (i == j) throw domain_error("bad_argument", "endpoints must differ");
    int k = g.distance(i, j);
    if (k < 0) throw domain_error("bad_argument", "no i-j path");
    Rational common = p.at(j);
    if (q < 0 || q > common) throw domain_error("bad_argument", "need 0 <= q <= p");
    if (!shortest_path_with_common_p(g, p, i, j, common, k))
        throw domain_error("path_hypothesis",
                           "no shortest path with a common probability on interior and j");
    ProbabilityVector out = p;
    out.at(j) -= q;
    out.at(i) +=
        q * pow_rational((1 - common) / common, k - 1) * (1 - p.at(i)) / common;
    for (const auto& x : out.entries)
        if (x <= 0 || x > 1)
            throw domain_error("range_exceeded", "transferred vector leaves (0,1]^m");
    return out;
}

std::vector<long> layer_sizes(const DepGraph& g, int i, int l, const std::vector<int>* T) {
    if (i < 1 || i > g.m) throw domain_error("bad_vertex", "vertex index out of range");
    if (l < 0) throw domain_error("bad_argument", "l must be nonnegative");
    std::vector<int> dist(g.m + 1, -1);
    std::queue<int> q;
    dist[i] = 0;
    q.push(i);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w = 1; w <= g.m; ++w)
            if (g.adjacent(v, w) && dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    std::vector<int> tset;
    if (T) {
        tset = *T;
        std::sort(tset.begin(), tset.end());
        tset.erase(std::unique(tset.begin(), tset.end()), tset.end());
        bool has_i = std::binary_search(tset.begin(), tset.end(), i);
        if (!has_i)
            throw domain_error("not_concentrated", "T must contain i");
        for (int v : tset) {
            if (v < 1 || v > g.m) throw domain_error("bad_vertex", "T vertex out of range");
            if (dist[v] < 0 || dist[v] > l)
                throw domain_error("not_concentrated", "T exceeds the radius-l ball");
        }
        // concentrated: distances inside the induced subgraph match global distances
        std::vector<int> din(g.m + 1, -1);
        std::vector<char> inT(g.m + 1, 0);
        for (int v : tset) inT[v] = 1;
        std::queue<int> q2;
        din[i] = 0;
        q2.push(i);
        while (!q2.empty()) {
            int v = q2.front();
            q2.pop();
            for (int w = 1; w <= g.m; ++w)
                if (inT[w] && g.adjacent(v, w) && din[w] < 0) {
                    din[w] = din[v] + 1;
                    q2.push(w);
                }
        }
        for (int v : tset)
            if (din[v] != dist[v])
                throw domain_error("not_concentrated",
                                   "T misses a shortest path to vertex " + std::to_string(v));
    } else {
        for (int v = 1; v <= g.m; ++v)
            if (dist[v] >= 0 && dist[v] <= l) tset.push_back(v);
    }
    std::vector<long> sizes(l, 0);
    for (int v : tset)
        if (dist[v] >= 1) ++sizes[dist[v] - 1];
    return sizes;
}

Rational generic_gap_bound(int delta, int l, const Rational& P, GapVariant variant) {
    if (P <= 0 || P >= 1) throw domain_error("bad_argument", "need 0 < P < 1");
    if (variant == GapVariant::theorem18) {
        if (delta < 2 || l < 0) throw domain_error("bad_argument", "need delta >= 2, l >= 0");
        return Rational(1, 25) * pow_rational(P, l + 3) /
               (pow_rational(1 - P, l) * pow_rational(Rational(delta - 1), l));
    }
    if (l < 1) throw domain_error("bad_argument", "corollary form needs l >= 1");
    return Rational(1, 50) * P * P * pow_rational(P / (1 - P), (l - 1) / 2);
}

namespace {

Rational sqrt5_approx() {
    // 50-digit rational approximant of sqrt(5)
    Int scale = boost::multiprecision::pow(Int(10), 50);
    Int s = boost::multiprecision::sqrt(Int(5) * scale * scale);
    return Rational(s, scale);
}

}  // namespace

std::vector<GapReport> lattice_gap_table() {
    std::vector<GapReport> rows;
    auto add = [&](const std::string& name, const Rational& pa, std::vector<long> layers) {
        Rational q1 = pow_rational(pa, 3) / 2;
        rows.push_back({name, pa, "p^3/2", layers, transfer_bound(pa, q1, layers)});
    };
    add("Triangular", (5 * sqrt5_approx() - 11) / 2, {6, 7, 5});
    add("Square", parse_rational("0.11933888188"), {4, 7, 5, 4});
    add("Hexagonal", parse_rational("0.1547"), {3, 6, 5, 5, 2});
    add("Simple cubic", parse_rational("0.0744"), {6, 13, 11, 8});
    return rows;
}

}  // namespace lll
