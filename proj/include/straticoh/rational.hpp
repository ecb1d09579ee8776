#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace straticoh {

// Exact arbitrary-precision rational scalar. GMP keeps values canonical
// (lowest terms, positive denominator) through arithmetic.
using Rational = mpq_class;

inline int sign(const Rational& x) { return sgn(x); }

inline std::string to_string(const Rational& x) { return x.get_str(); }

// GMP rationals built from a numerator/denominator pair must be canonicalized
// before any arithmetic or comparison touches them.
inline Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational x(num, den);
    x.canonicalize();
    return x;
}

// Parses "p", "p/q" or "-p/q". Throws on malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
    Rational x;
    if (x.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (x.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational: '" + s + "'");
    x.canonicalize();
    return x;
}

}  // namespace straticoh
