#ifndef LLL_GAP_HPP
#define LLL_GAP_HPP

#include <string>
#include <vector>

#include "lll/graph.hpp"
#include "lll/shearer.hpp"

namespace lll {

struct TransferLayers {
    Rational p;
    Rational q1;
    std::vector<long> layer_sizes;  // |T_k| for k = 1..l
    void validate() const;
};

// tau(d,l,p,q): closed-form transfer lower bound on a degree-d graph within radius l
Rational tau(int d, int l, const Rational& p, const Rational& q);

// q2 upper bound from the layered transfer argument
Rational transfer_bound(const Rational& p, const Rational& q1,
                        const std::vector<long>& layer_sizes);

// p' = p - q*(e_j - (1-p_i)/p_j * e_i), i adjacent to j
ProbabilityVector element_transfer(const DepGraph& g, const ProbabilityVector& p, int i, int j,
                                   const Rational& q);

// composite transfer along a shortest i-j path whose interior and j all carry a common p
ProbabilityVector path_transfer(const DepGraph& g, const ProbabilityVector& p, int i, int j,
                                const Rational& q);

// sizes of {j in T : Dis(i,j)=k}, k=1..l; T defaults to the radius-l ball around i
std::vector<long> layer_sizes(const DepGraph& g, int i, int l,
                              const std::vector<int>* T = nullptr);

enum class GapVariant { theorem18, corollary19 };

Rational generic_gap_bound(int delta, int l, const Rational& P, GapVariant variant);

struct GapReport {
    std::string lattice;
    Rational P_A;
    std::string q1_rule;  // "p^3" or "p^3/2"
    std::vector<long> layers;
    Rational lower_bound_on_gap;
};

std::vector<GapReport> lattice_gap_table();

}  // namespace lll

#endif
