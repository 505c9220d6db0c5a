#include "lll/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace lll {

namespace {

// the big-int string parser treats a leading zero as an octal prefix
std::string decimal_literal(std::string t) {
    std::string sign;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        sign = t[0];
        t.erase(0, 1);
    }
    if (t.size() > 1) t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
    return sign + t;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw domain_error("bad_rational", "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        try {
            Int n(decimal_literal(s.substr(0, slash)));
            Int d(decimal_literal(s.substr(slash + 1)));
            if (d == 0) throw domain_error("bad_rational", "zero denominator: " + s);
            return Rational(n, d);
        } catch (const domain_error&) {
            throw;
        } catch (const std::exception&) {
            throw domain_error("bad_rational", "malformed fraction: " + s);
        }
    }
    // decimal / scientific form
    std::string body = s;
    long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        body = s.substr(0, e);
    }
    bool neg = false;
    size_t pos = 0;
    if (pos < body.size() && (body[pos] == '+' || body[pos] == '-')) {
        neg = body[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    for (; pos < body.size(); ++pos) {
        char c = body[pos];
        if (c == '.') {
            if (seen_dot) throw domain_error("bad_rational", "malformed number: " + s);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            throw domain_error("bad_rational", "malformed number: " + s);
        }
    }
    if (digits.empty()) throw domain_error("bad_rational", "malformed number: " + s);
    Int n(decimal_literal(digits));
    if (neg) n = -n;
    Rational r(n, 1);
    long shift = exp10 - frac_digits;
    Int ten(10);
    if (shift > 0)
        r *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(shift)), 1);
    else if (shift < 0)
        r /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-shift)), 1);
    return r;
}

std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int sig) {
    double d = r.convert_to<double>();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, d);
    return buf;
}

Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return 1;
    if (exp < 0) {
        if (base == 0) throw domain_error("division_by_zero", "0 to a negative power");
        return 1 / pow_rational(base, -exp);
    }
    Rational acc = 1, b = base;
    long e = exp;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace lll
