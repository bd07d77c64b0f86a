#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

namespace g2fm {

using Rational = mpq_class;

// Accepts "p/q", integers and plain decimals ("-1.25", "3e-2").
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double d) { return d; }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Uniform small rational p/q with |p| <= max_num, 1 <= q <= max_den.
Rational random_rational(std::mt19937_64& rng, int max_num = 5, int max_den = 4);

// Best rational approximation with bounded denominator (continued fractions).
Rational rationalize(double x, long max_den = 10000);

}  // namespace g2fm
