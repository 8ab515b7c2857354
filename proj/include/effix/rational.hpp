#pragma once

#include <gmpxx.h>

#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effix/errors.hpp"

namespace effix {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". The result is canonicalized; q = 0 is rejected.
inline Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(std::string(text.substr(0, text.size() - body.size())) + std::string(num), 10), d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline Integer lcm_of_denominators(std::span<const Rational> values) {
    Integer l = 1;
    for (const Rational& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

/// The primitive integral vector on the ray through `values` (zero stays zero).
inline std::vector<Integer> primitive_integral(std::span<const Rational> values) {
    const Integer l = lcm_of_denominators(values);
    std::vector<Integer> out;
    out.reserve(values.size());
    Integer g = 0;
    for (const Rational& v : values) {
        Integer z = v.get_num() * (l / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        out.push_back(std::move(z));
    }
    if (g > 1) {
        for (Integer& z : out) z /= g;
    }
    return out;
}

}  // namespace effix
