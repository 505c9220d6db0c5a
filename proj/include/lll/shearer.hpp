#ifndef LLL_SHEARER_HPP
#define LLL_SHEARER_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lll/graph.hpp"
#include "lll/rational.hpp"

namespace lll {

// probability / relative-dimension vector over the left vertices, entries in (0,1]
struct ProbabilityVector {
    std::vector<Rational> entries;  // entries[0] <-> vertex 1

    ProbabilityVector() = default;
    explicit ProbabilityVector(std::vector<Rational> e);
    const Rational& at(int i) const { return entries.at(i - 1); }
    Rational& at(int i) { return entries.at(i - 1); }
    int size() const { return static_cast<int>(entries.size()); }
    void validate(int m) const;
};

// memoized evaluator for I(G_D(S), r|_S); component factorization + Prop-style recurrence
class IndPoly {
  public:
    IndPoly(const DepGraph& g, const ProbabilityVector& r);
    Rational eval(uint32_t mask);
    Rational eval_all() { return eval(g_.full_mask()); }
    const DepGraph& graph() const { return g_; }

  private:
    Rational eval_connected(uint32_t mask);
    DepGraph g_;
    std::vector<Rational> r_;
    std::unordered_map<uint32_t, Rational> memo_;
};

Rational ind_poly(const DepGraph& g, const ProbabilityVector& r);
Rational ind_poly(const DepGraph& g, const ProbabilityVector& r, const std::vector<int>& subset);

int subset_enumeration_cap();  // default 24, override via LLL_MAX_SUBSETS

struct ShearerVerdict {
    bool in_bound = false;
    std::optional<std::vector<int>> witness;  // min size, lex least, connected
    Rational value_at_witness = 0;
    Rational full_value = 0;  // I(G_D, r)
};

ShearerVerdict shearer_check(const DepGraph& g, const ProbabilityVector& r);

Rational symmetric_threshold(const DepGraph& g, const Rational& tol);

// lambda with lambda*r on the boundary; throws ray_exits if the ray leaves (0,1]^m first
Rational boundary_scale(const DepGraph& g, const ProbabilityVector& r, const Rational& tol);

struct FloorResult {
    Rational value;
    std::vector<Rational> mins;  // I(G_D, p, k) for k = 1..t
};

FloorResult shearer_floor(const DepGraph& g, const ProbabilityVector& p, int t, bool on_boundary);

struct ExtremalMass {
    std::vector<int> set;  // independent set, sorted
    Rational mass;
};

// mu(S) = prod_{i in S} p_i * I(G_D(V \ Gamma^+(S)), p); throws if any mass is negative
std::vector<ExtremalMass> extremal_distribution(const DepGraph& g, const ProbabilityVector& p);

}  // namespace lll

#endif
