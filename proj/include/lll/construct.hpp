#ifndef LLL_CONSTRUCT_HPP
#define LLL_CONSTRUCT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lll/graph.hpp"
#include "lll/linalg.hpp"
#include "lll/shearer.hpp"
#include <nlohmann/json_fwd.hpp>

namespace lll {

// explicit local subspaces V_i^loc over the qudits each Hamiltonian acts on;
// the full V_i is V_i^loc tensor identity on the remaining qudits (lifted lazily)
struct SubspaceInstance {
    BipartiteGraph graph;
    std::vector<long> dims;  // dims[j-1] = d_j
    uint64_t seed = 0;
    struct Local {
        std::vector<int> acts_on;                      // N(i), sorted
        std::vector<std::vector<Rational>> basis;      // rows x prod(d_j : j in N(i))
    };
    std::vector<Local> hams;

    long total_dim() const;
    long local_dim(int i) const;  // prod of dims over N(i)
    void validate() const;        // row counts match r_i * prod d_j being integers
};

struct SpanReport {
    long total_dim = 0;
    long span_dim = 0;
    Rational kernel_relative_dim = 0;
    std::string method;            // "exact" or "modular"
    std::vector<uint64_t> primes;  // when modular
};

enum class RankMode { exact, modular, automatic };

std::vector<std::vector<Rational>> sample_random_subspace(long ambient_dim, long sub_dim,
                                                          uint64_t seed);

long default_total_dim_cap();  // 2^16

SubspaceInstance construct_spanning_instance(const BipartiteGraph& g,
                                             const ProbabilityVector& r, uint64_t seed,
                                             long total_dim_cap = default_total_dim_cap());

SubspaceInstance construct_boundary_instance(const BipartiteGraph& g,
                                             const ProbabilityVector& r, uint64_t seed,
                                             long total_dim_cap = default_total_dim_cap());

SpanReport verify_span(const SubspaceInstance& inst, RankMode mode = RankMode::automatic);

// qudit dimensions derived from the inductive splitting recursion (no sampling)
std::vector<long> recursion_dims(const BipartiteGraph& g, const ProbabilityVector& r,
                                 long total_dim_cap = default_total_dim_cap());

SubspaceInstance pad_dims(const SubspaceInstance& inst, const std::vector<long>& new_dims);

// stacked lifted rows of all Hamiltonians (for rank checks)
std::vector<SparseRow> lifted_rows(const SubspaceInstance& inst);

nlohmann::json instance_to_json(const SubspaceInstance& inst);
SubspaceInstance instance_from_json(const nlohmann::json& j);

}  // namespace lll

#endif
