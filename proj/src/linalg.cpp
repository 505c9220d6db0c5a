#include "lll/linalg.hpp"

#include <algorithm>
#include <random>

namespace lll {

long exact_rank(const std::vector<SparseRow>& rows, long cols) {
    // scale every row to integers, then fraction-free (Bareiss) elimination:
    // entries stay minors of the scaled matrix, divisions are exact
    std::vector<std::vector<Int>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        Int lcm = 1;
        for (auto& [c, v] : r) {
            Int d = denominator(v);
            lcm = lcm / gcd(lcm, d) * d;
        }
        std::vector<Int> dense(cols, Int(0));
        for (auto& [c, v] : r) dense[c] = numerator(v) * (lcm / denominator(v));
        m.push_back(std::move(dense));
    }
    long rank = 0;
    Int prev = 1;
    size_t nrows = m.size();
    for (long col = 0; col < cols && rank < static_cast<long>(nrows); ++col) {
        size_t piv = nrows;
        for (size_t r = rank; r < nrows; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv == nrows) continue;
        std::swap(m[rank], m[piv]);
        const Int pivot = m[rank][col];
        for (size_t r = rank + 1; r < nrows; ++r) {
            const Int factor = m[r][col];
            for (long c = col; c < cols; ++c)
                m[r][c] = (m[r][c] * pivot - m[rank][c] * factor) / prev;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

namespace {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a, p - 2, p); }

uint64_t rational_mod(const Rational& v, uint64_t p) {
    Int n = numerator(v) % p;
    Int d = denominator(v) % p;
    uint64_t nu = static_cast<uint64_t>(n < 0 ? n + p : n);
    uint64_t du = static_cast<uint64_t>(d < 0 ? d + p : d);
    if (du == 0) throw domain_error("bad_prime", "denominator divisible by the prime");
    return mulmod(nu, invmod(du, p), p);
}

}  // namespace

long rank_mod_prime(const std::vector<SparseRow>& rows, long cols, uint64_t p) {
    std::vector<std::vector<uint64_t>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<uint64_t> dense(cols, 0);
        for (auto& [c, v] : r) dense[c] = rational_mod(v, p);
        m.push_back(std::move(dense));
    }
    long rank = 0;
    size_t nrows = m.size();
    for (long col = 0; col < cols && rank < static_cast<long>(nrows); ++col) {
        size_t piv = nrows;
        for (size_t r = rank; r < nrows; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv == nrows) continue;
        std::swap(m[rank], m[piv]);
        uint64_t inv = invmod(m[rank][col], p);
        for (long c = col; c < cols; ++c) m[rank][c] = mulmod(m[rank][c], inv, p);
        for (size_t r = 0; r < nrows; ++r) {
            if (r == static_cast<size_t>(rank) || m[r][col] == 0) continue;
            uint64_t f = m[r][col];
            for (long c = col; c < cols; ++c) {
                uint64_t sub = mulmod(f, m[rank][c], p);
                m[r][c] = m[r][c] >= sub ? m[r][c] - sub : m[r][c] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
        if (n % q == 0) return n == q;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic witness set for 64-bit integers
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                       37ull}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t random_prime(uint64_t seed, int index) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + index);
    for (;;) {
        uint64_t c = (rng() | (1ull << 60) | 1ull) & ((1ull << 62) - 1);
        if (c > (1ull << 60) && is_prime_u64(c)) return c;
    }
}

}  // namespace lll
