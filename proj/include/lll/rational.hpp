#ifndef LLL_RATIONAL_HPP
#define LLL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lll {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// domain errors carry a short machine-readable code plus a human message
struct domain_error : std::runtime_error {
    std::string code;
    domain_error(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

inline Int num(const Rational& r) { return numerator(r); }
inline Int den(const Rational& r) { return denominator(r); }

// pd(r): denominator of r in lowest terms
inline Int pd(const Rational& r) { return denominator(r); }

// accepts "num/den", plain integers, decimals ("0.3") and exponents ("5e-3")
Rational parse_rational(const std::string& s);

std::string to_fraction_string(const Rational& r);

// shortest-of: round-trip through double formatting, sig significant digits
std::string to_decimal_string(const Rational& r, int sig = 12);

Rational pow_rational(const Rational& base, long exp);

}  // namespace lll

#endif
