#include "lll/shearer.hpp"

#include <algorithm>
#include <cstdlib>

namespace lll {

ProbabilityVector::ProbabilityVector(std::vector<Rational> e) : entries(std::move(e)) {}

void ProbabilityVector::validate(int m) const {
    if (size() != m)
        throw domain_error("dimension_mismatch", "probability vector length != m");
    for (const auto& x : entries)
        if (x <= 0 || x > 1)
            throw domain_error("bad_probability", "entries must lie in (0,1]");
}

IndPoly::IndPoly(const DepGraph& g, const ProbabilityVector& r) : g_(g) {
    r.validate(g.m);
    r_.resize(g.m + 1);
    for (int i = 1; i <= g.m; ++i) r_[i] = r.at(i);
}

Rational IndPoly::eval(uint32_t mask) {
    if (mask == 0) return 1;
    // component factorization
    Rational prod = 1;
    uint32_t rest = mask;
    while (rest) {
        uint32_t comp = rest & (~rest + 1);
        for (;;) {
            uint32_t frontier = 0;
            uint32_t t = comp;
            while (t) {
                int v = __builtin_ctz(t) + 1;
                t &= t - 1;
                frontier |= g_.adj_mask(v);
            }
            uint32_t grown = comp | (frontier & mask);
            if (grown == comp) break;
            comp = grown;
        }
        prod *= eval_connected(comp);
        rest &= ~comp;
    }
    return prod;
}

Rational IndPoly::eval_connected(uint32_t mask) {
    if (__builtin_popcount(mask) == 1) {
        int v = __builtin_ctz(mask) + 1;
        return 1 - r_[v];
    }
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    int v = __builtin_ctz(mask) + 1;
    // I(S) = I(S \ {v}) - r_v * I(S \ Gamma_v^+)
    Rational val = eval(mask & ~DepGraph::bit(v)) - r_[v] * eval(mask & ~g_.adj_plus_mask(v));
    memo_.emplace(mask, val);
    return val;
}

Rational ind_poly(const DepGraph& g, const ProbabilityVector& r) {
    return IndPoly(g, r).eval_all();
}

Rational ind_poly(const DepGraph& g, const ProbabilityVector& r, const std::vector<int>& subset) {
    uint32_t mask = 0;
    for (int v : subset) {
        if (v < 1 || v > g.m) throw domain_error("bad_vertex", "subset vertex out of range");
        mask |= DepGraph::bit(v);
    }
    return IndPoly(g, r).eval(mask);
}

int subset_enumeration_cap() {
    if (const char* e = std::getenv("LLL_MAX_SUBSETS")) {
        int v = std::atoi(e);
        if (v > 0) return std::min(v, 31);
    }
    return 24;
}

namespace {

// enumerate k-subsets of 1..m in lexicographic order; callback returns true to stop
template <typename F>
bool for_each_combination(int m, int k, F&& f) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i + 1;
    for (;;) {
        if (f(c)) return true;
        int i = k - 1;
        while (i >= 0 && c[i] == m - (k - 1 - i)) --i;
        if (i < 0) return false;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace

ShearerVerdict shearer_check(const DepGraph& g, const ProbabilityVector& r) {
    if (g.m > subset_enumeration_cap())
        throw domain_error("cap_exceeded",
                           "vertex count above the subset enumeration cap (LLL_MAX_SUBSETS)");
    IndPoly poly(g, r);
    ShearerVerdict v;
    // minimal witnesses induce connected base subgraphs, so connected sets suffice
    for (int k = 1; k <= g.m; ++k) {
        bool found = for_each_combination(g.m, k, [&](const std::vector<int>& c) {
            uint32_t mask = 0;
            for (int x : c) mask |= DepGraph::bit(x);
            if (!g.connected_mask(mask)) return false;
            Rational val = poly.eval(mask);
            if (val <= 0) {
                v.in_bound = false;
                v.witness = c;
                v.value_at_witness = val;
                return true;
            }
            return false;
        });
        if (found) {
            v.full_value = poly.eval_all();
            return v;
        }
    }
    v.in_bound = true;
    v.full_value = poly.eval_all();
    v.value_at_witness = v.full_value;
    return v;
}

namespace {

bool symmetric_beyond(const DepGraph& g, const Rational& p) {
    std::vector<Rational> e(g.m, p);
    return !shearer_check(g, ProbabilityVector(std::move(e))).in_bound;
}

}  // namespace

Rational symmetric_threshold(const DepGraph& g, const Rational& tol) {
    if (g.m == 0) throw domain_error("bad_graph", "empty graph has no threshold");
    if (tol <= 0) throw domain_error("bad_tolerance", "tol must be positive");
    Rational lo = 0, hi = 1;  // p=1 is always beyond (single vertex already gives I <= 0)
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        if (symmetric_beyond(g, mid))
            hi = mid;
        else
            lo = mid;
    }
    return (lo + hi) / 2;
}

Rational boundary_scale(const DepGraph& g, const ProbabilityVector& r, const Rational& tol) {
    r.validate(g.m);
    if (tol <= 0) throw domain_error("bad_tolerance", "tol must be positive");
    Rational lambda_max;
    bool first = true;
    for (const auto& x : r.entries) {
        Rational lim = 1 / x;
        if (first || lim < lambda_max) lambda_max = lim;
        first = false;
    }
    auto beyond_at = [&](const Rational& lam) {
        std::vector<Rational> e;
        e.reserve(r.entries.size());
        for (const auto& x : r.entries) e.push_back(lam * x);
        return !shearer_check(g, ProbabilityVector(std::move(e))).in_bound;
    };
    if (!beyond_at(lambda_max))
        throw domain_error("ray_exits",
                           "lambda*r leaves (0,1]^m before reaching the boundary");
    Rational lo = 0, hi = lambda_max;
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        if (beyond_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    return (lo + hi) / 2;
}

FloorResult shearer_floor(const DepGraph& g, const ProbabilityVector& p, int t,
                          bool on_boundary) {
    p.validate(g.m);
    if (t < 0 || t > g.m - 2)
        throw domain_error("bad_argument", "t must satisfy 0 <= t <= m-2");
    IndPoly poly(g, p);
    FloorResult res;
    if (!on_boundary) {
        res.value = poly.eval_all();
        return res;
    }
    Rational pmin = p.at(1);
    for (int i = 2; i <= g.m; ++i) pmin = std::min(pmin, p.at(i));
    Rational f = pow_rational(pmin, t);
    for (int k = 1; k <= t; ++k) {
        Rational best;
        bool first = true;
        for_each_combination(g.m, k, [&](const std::vector<int>& c) {
            uint32_t mask = 0;
            for (int x : c) mask |= DepGraph::bit(x);
            Rational val = poly.eval(mask);
            if (first || val < best) best = val;
            first = false;
            return false;
        });
        res.mins.push_back(best);
        f *= best / Rational(g.m - 1 - k);
    }
    res.value = f;
    return res;
}

std::vector<ExtremalMass> extremal_distribution(const DepGraph& g, const ProbabilityVector& p) {
    p.validate(g.m);
    IndPoly poly(g, p);
    uint32_t full = g.full_mask();
    std::vector<ExtremalMass> out;
    for (uint32_t s = 0;; ++s) {
        bool independent = true;
        uint32_t gamma_plus = 0;
        uint32_t t = s;
        while (t) {
            int v = __builtin_ctz(t) + 1;
            t &= t - 1;
            if (g.adj_mask(v) & s) { independent = false; break; }
            gamma_plus |= g.adj_plus_mask(v);
        }
        if (independent) {
            Rational mass = poly.eval(full & ~gamma_plus);
            t = s;
            while (t) {
                int v = __builtin_ctz(t) + 1;
                t &= t - 1;
                mass *= p.at(v);
            }
            if (mass < 0) {
                std::string verts;
                uint32_t u = s;
                while (u) {
                    verts += std::to_string(__builtin_ctz(u) + 1);
                    u &= u - 1;
                    if (u) verts += ",";
                }
                throw domain_error("negative_mass",
                                   "p is beyond Shearer's bound; negative mass at {" + verts +
                                       "}");
            }
            ExtremalMass em;
            uint32_t u = s;
            while (u) {
                em.set.push_back(__builtin_ctz(u) + 1);
                u &= u - 1;
            }
            em.mass = mass;
            out.push_back(std::move(em));
        }
        if (s == full) break;
    }
    return out;
}

}  // namespace lll
