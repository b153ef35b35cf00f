#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace ccset {

/// Arbitrary-precision rational. gmpxx arithmetic keeps canonical operands
/// canonical; the two-argument constructor does not reduce, so values built
/// from a numerator and denominator must be canonicalized first.
using Rational = mpq_class;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view tower = "float64";
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view tower = "rational";
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

inline int sign(double v) { return (v > 0) - (v < 0); }
inline int sign(const Rational& v) { return sgn(v); }

inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

/// Square root in the scalar's own tower. For rationals the result is exact
/// whenever numerator and denominator are perfect squares; otherwise it is a
/// rational within 2^-200 relative of the true root.
double scalar_sqrt(double v);
Rational scalar_sqrt(const Rational& v);

/// Exact rational square root, or nullopt when the value is not a square.
std::optional<Rational> exact_sqrt(const Rational& v);

/// Shortest round-trip decimal for doubles; canonical "p/q" (or "p") for
/// rationals.
std::string format_scalar(double v);
std::string format_scalar(const Rational& v);

template <class T>
std::optional<T> parse_scalar(std::string_view text);

template <>
std::optional<double> parse_scalar<double>(std::string_view text);
template <>
std::optional<Rational> parse_scalar<Rational>(std::string_view text);

}  // namespace ccset
