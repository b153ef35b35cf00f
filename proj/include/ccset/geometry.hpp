#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccset/error.hpp"
#include "ccset/scalar.hpp"

namespace ccset {

template <class T>
struct Point {
  T x{};
  T y{};

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend Point operator+(const Point& a, const Point& b) { return {T(a.x + b.x), T(a.y + b.y)}; }
  friend Point operator-(const Point& a, const Point& b) { return {T(a.x - b.x), T(a.y - b.y)}; }
  friend Point operator*(const T& s, const Point& p) { return {T(s * p.x), T(s * p.y)}; }
};

using Point2 = Point<double>;
using ExactPoint = Point<Rational>;

template <class T>
T dot(const Point<T>& a, const Point<T>& b) {
  return T(a.x * b.x + a.y * b.y);
}

template <class T>
T cross(const Point<T>& a, const Point<T>& b) {
  return T(a.x * b.y - a.y * b.x);
}

template <class T>
T norm_sq(const Point<T>& a) {
  return dot(a, a);
}

template <class T>
T distance_sq(const Point<T>& a, const Point<T>& b) {
  return norm_sq(a - b);
}

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }

template <class T>
Point2 to_float(const Point<T>& p) {
  return {to_double(p.x), to_double(p.y)};
}

inline ExactPoint to_exact(const Point2& p) { return {Rational(p.x), Rational(p.y)}; }

/// Relative collinearity threshold of the float tower: a triple is degenerate
/// when |cross| <= kCollinearTolerance * (longest edge)^2.
inline constexpr double kCollinearTolerance = 1e-12;

/// Sign of the signed parallelogram area of (q - p, r - p).
template <class T>
int orientation(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  const Point<T> u = q - p;
  const Point<T> v = r - p;
  const T area = cross(u, v);
  if constexpr (is_exact_v<T>) {
    return sign(area);
  } else {
    const double scale = std::max({norm_sq(u), norm_sq(v), distance_sq(q, r)});
    if (std::fabs(area) <= kCollinearTolerance * scale) return 0;
    return area > 0 ? 1 : -1;
  }
}

template <class T>
struct Triangle {
  Point<T> a;
  Point<T> b;
  Point<T> c;
};

template <class T>
Triangle<T> make_triangle(const Point<T>& a, const Point<T>& b, const Point<T>& c) {
  if (orientation(a, b, c) == 0) throw Error(ErrorKind::CollinearInput, "triangle vertices are collinear");
  return {a, b, c};
}

namespace detail {

// Intersection of the perpendicular bisectors of pq and pr, solved in
// coordinates relative to p.
template <class T>
Point<T> center_from(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  const Point<T> u = q - p;
  const Point<T> v = r - p;
  const T det = T(2 * cross(u, v));
  const T uu = norm_sq(u);
  const T vv = norm_sq(v);
  return {T(p.x + (uu * v.y - vv * u.y) / det), T(p.y + (u.x * vv - v.x * uu) / det)};
}

}  // namespace detail

/// Circumcenter from the perpendicular bisector system. Stays inside the
/// scalar field, so rational inputs give a rational center. Floats anchor at
/// the vertex opposite the longest side: when two vertices nearly coincide
/// their difference is then taken exactly instead of through a far vertex.
template <class T>
Point<T> circumcenter(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  if (orientation(p, q, r) == 0) throw Error(ErrorKind::CollinearInput, "circle center of a collinear triple is undefined");
  if constexpr (is_exact_v<T>) {
    return detail::center_from(p, q, r);
  } else {
    const double pq = distance_sq(p, q);
    const double qr = distance_sq(q, r);
    const double rp = distance_sq(r, p);
    if (pq >= qr && pq >= rp) return detail::center_from(r, p, q);
    if (rp >= qr) return detail::center_from(q, r, p);
    return detail::center_from(p, q, r);
  }
}

template <class T>
Point<T> circumcenter(const Triangle<T>& t) {
  return circumcenter(t.a, t.b, t.c);
}

template <class T>
T circumradius_sq(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  return distance_sq(circumcenter(p, q, r), p);
}

/// Orientation-preserving similarity z -> w z + t with w = a + i b, i.e. the
/// linear part [a -b; b a] = lambda * R(theta).
template <class T>
struct Similarity {
  T a{1};
  T b{0};
  T tx{0};
  T ty{0};

  static Similarity identity() { return {T(1), T(0), T(0), T(0)}; }

  Point<T> operator()(const Point<T>& p) const {
    return {T(a * p.x - b * p.y + tx), T(b * p.x + a * p.y + ty)};
  }

  T scale_sq() const { return T(a * a + b * b); }
  double scale() const { return std::hypot(to_double(a), to_double(b)); }
  double angle() const { return std::atan2(to_double(b), to_double(a)); }

  /// The linear part applied to a vector (no translation).
  Point<T> linear(const Point<T>& v) const { return {T(a * v.x - b * v.y), T(b * v.x + a * v.y)}; }

  Similarity inverse() const {
    const T s = scale_sq();
    if (s == T(0)) throw Error(ErrorKind::InvalidArgument, "similarity with zero scale has no inverse");
    const T ia = T(a / s);
    const T ib = T(-b / s);
    return {ia, ib, T(-(ia * tx - ib * ty)), T(-(ib * tx + ia * ty))};
  }

  friend bool operator==(const Similarity& g, const Similarity& h) {
    return g.a == h.a && g.b == h.b && g.tx == h.tx && g.ty == h.ty;
  }
};

/// (g * h)(p) = g(h(p)).
template <class T>
Similarity<T> compose(const Similarity<T>& g, const Similarity<T>& h) {
  const Point<T> t = g(Point<T>{h.tx, h.ty});
  return {T(g.a * h.a - g.b * h.b), T(g.a * h.b + g.b * h.a), t.x, t.y};
}

inline Similarity<double> make_similarity(double scale, double angle, Point2 translation) {
  return {scale * std::cos(angle), scale * std::sin(angle), translation.x, translation.y};
}

/// The unique scaled rotation plus translation with p1 -> q1 and p2 -> q2.
/// The linear part carries p2 - p1 onto q2 - q1 (complex division).
template <class T>
Similarity<T> similarity_from_pairs(const Point<T>& p1, const Point<T>& p2, const Point<T>& q1, const Point<T>& q2) {
  const Point<T> from = p2 - p1;
  const Point<T> to = q2 - q1;
  const T den = norm_sq(from);
  if (den == T(0)) throw Error(ErrorKind::DegeneratePair, "source points coincide");
  Similarity<T> g;
  g.a = T((to.x * from.x + to.y * from.y) / den);
  g.b = T((to.y * from.x - to.x * from.y) / den);
  const Point<T> moved = g.linear(p1);
  g.tx = T(q1.x - moved.x);
  g.ty = T(q1.y - moved.y);
  return g;
}

/// Solves (I - linear) p = translation.
template <class T>
Point<T> fixed_point(const Similarity<T>& g) {
  const T ea = T(1 - g.a);
  const T eb = T(-g.b);
  const T den = T(ea * ea + eb * eb);
  if (den == T(0)) {
    if (g.tx == T(0) && g.ty == T(0)) throw Error(ErrorKind::EveryPointFixed, "identity map fixes every point");
    throw Error(ErrorKind::NoUniqueFixedPoint, "pure translation has no fixed point");
  }
  // p = t / (1 - w) as complex numbers.
  return {T((g.tx * ea + g.ty * eb) / den), T((g.ty * ea - g.tx * eb) / den)};
}

template <class T>
Triangle<T> apply(const Similarity<T>& g, const Triangle<T>& t) {
  return {g(t.a), g(t.b), g(t.c)};
}

}  // namespace ccset
