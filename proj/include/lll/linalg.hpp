#ifndef LLL_LINALG_HPP
#define LLL_LINALG_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lll/rational.hpp"

namespace lll {

// one row of a tall sparse matrix: (column, value) with columns in [0, cols)
using SparseRow = std::vector<std::pair<long, Rational>>;

// fraction-free (Bareiss) elimination over exact integers after row scaling
long exact_rank(const std::vector<SparseRow>& rows, long cols);

// Gaussian elimination modulo a word-size prime; always a lower bound on the true rank
long rank_mod_prime(const std::vector<SparseRow>& rows, long cols, uint64_t p);

bool is_prime_u64(uint64_t n);
// deterministic stream of random primes > 2^60
uint64_t random_prime(uint64_t seed, int index);

}  // namespace lll

#endif
