#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace morikit {

// Arbitrary-precision integers and rationals. All arithmetic in the math
// core is exact; floating point never appears in any computation path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Int& a) { return a.sign(); }
inline int sign(const Rat& r) { return num(r).sign(); }

// floor(a / b) for b != 0, rounding toward minus infinity.
Int floor_div(const Int& a, const Int& b);

// floor and ceil of a rational.
Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

// nearest integer, halves rounded down (deterministic).
Int rat_round(const Rat& r);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

// smallest integer s with s*s >= n (n >= 0).
Int isqrt_ceil(const Int& n);

bool is_square(const Int& n);
bool is_square(const Int& n, Int& root);

// smallest-ish rational upper bound for sqrt(r), r >= 0; exact when r is a
// square. Used only to round search windows outward, never for results.
Rat sqrt_upper_bound(const Rat& r);

// Parses "p", "p/q", or "-p/q" (lowest terms not required on input).
// Throws input_error on malformed text or q == 0.
Rat parse_rational(const std::string& text);

// Emits "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string format_rational(const Rat& r);

} // namespace morikit
