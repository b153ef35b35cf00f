#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "ccset/derivation.hpp"
#include "ccset/geometry.hpp"

namespace ccset {

/// Ratio between consecutive isosceles triangles of the circle-center
/// recursion with vertex angle beta: (cot(beta/2) - cot(beta)) / 2.
double lambda_of(double beta);

/// Angle at `apex` subtended by `p` and `q`, in [0, pi].
double vertex_angle(const Point2& p, const Point2& q, const Point2& apex);

struct IsoscelesResult {
  /// Base vertices a, b and apex c.
  Triangle<double> triangle;
  Derivation derivation;
  /// Derivation indices of triangle.a, triangle.b, triangle.c.
  std::array<std::size_t, 3> indices{};
  double apex_angle = 0.0;
  int doublings = 0;
};

/// Builds, by circle-center steps from {p, q, r}, an isosceles triangle whose
/// apex angle lies strictly between pi/6 and 5pi/6.
IsoscelesResult isoscelize(const Point2& p, const Point2& q, const Point2& r);

template <class T>
struct SpiralState {
  std::vector<Point<T>> points;
  /// Apex angle of P1 P2 P3 at P3.
  double beta = 0.0;
  /// Scale of f; matches lambda_of(beta).
  double lambda = 0.0;
  /// The similarity with P1 -> P3, P2 -> P4.
  Similarity<T> f;
  Point<T> p_infinity;
  /// |lambda - lambda_of(beta)|.
  double lambda_residual = 0.0;
  /// Largest relative deviation of the side lengths of P_{2k+1} P_{2k+2} P_{2k+3}
  /// from lambda^k times those of P1 P2 P3.
  double chain_residual = 0.0;
};

/// Relative agreement of the two legs required of a float isosceles start.
inline constexpr double kIsoscelesTolerance = 1e-10;

/// P_n = C(P_{n-1}, P_{n-2}, P_{n-3}) for n = 4..count from an isosceles
/// start with apex p3.
template <class T>
SpiralState<T> spiral_orbit(const Point<T>& p1, const Point<T>& p2, const Point<T>& p3, std::size_t count) {
  if (count < 4) throw Error(ErrorKind::InvalidArgument, "a spiral orbit needs at least 4 points");
  const T leg1 = distance_sq(p3, p1);
  const T leg2 = distance_sq(p3, p2);
  if constexpr (is_exact_v<T>) {
    if (leg1 != leg2) throw Error(ErrorKind::NotIsosceles, "|P3P1| != |P3P2|");
  } else {
    if (std::fabs(leg1 - leg2) > kIsoscelesTolerance * std::max(leg1, leg2)) {
      throw Error(ErrorKind::NotIsosceles, "|P3P1| != |P3P2|");
    }
  }

  SpiralState<T> state;
  state.points = {p1, p2, p3};
  state.points.reserve(count);
  while (state.points.size() < count) {
    const std::size_t n = state.points.size();
    try {
      state.points.push_back(circumcenter(state.points[n - 1], state.points[n - 2], state.points[n - 3]));
    } catch (const Error&) {
      throw Error(ErrorKind::CollinearStep, "P" + std::to_string(n + 1) + " has collinear ancestors");
    }
  }

  const auto& P = state.points;
  state.beta = vertex_angle(to_float(P[0]), to_float(P[1]), to_float(P[2]));
  state.f = similarity_from_pairs(P[0], P[1], P[2], P[3]);
  state.p_infinity = fixed_point(state.f);
  state.lambda = state.f.scale();
  state.lambda_residual = std::fabs(state.lambda - lambda_of(state.beta));

  const Point2 a = to_float(P[0]), b = to_float(P[1]), c = to_float(P[2]);
  const std::array<double, 3> base{distance(a, b), distance(b, c), distance(c, a)};
  double scale = 1.0;
  for (std::size_t k = 1; 2 * k + 2 < P.size(); ++k) {
    scale *= state.lambda;
    const Point2 u = to_float(P[2 * k]), v = to_float(P[2 * k + 1]), w = to_float(P[2 * k + 2]);
    const std::array<double, 3> sides{distance(u, v), distance(v, w), distance(w, u)};
    for (std::size_t s = 0; s < 3; ++s) {
      const double expected = scale * base[s];
      state.chain_residual = std::max(state.chain_residual, std::fabs(sides[s] - expected) / expected);
    }
  }
  return state;
}

/// Closed form of the limit point for the start (0,-1), (0,1), (x,0).
template <class T>
Point<T> p_infinity_formula(const T& x) {
  if (x == T(0)) throw Error(ErrorKind::ZeroApex, "apex on the base line");
  const T x2 = T(x * x);
  const T x4 = T(x2 * x2);
  const T den = T(x4 + 18 * x2 + 1);
  return {T((12 * x2 * x - 4 * x) / den), T((3 * x4 + 2 * x2 - 1) / den)};
}

struct QueueLine {
  /// Unit direction of the line through P_inf and the first queue point.
  Point2 direction;
  /// Largest perpendicular distance of later queue points from that line,
  /// divided by their distance from P_inf.
  double residual = 0.0;
  /// |P - P_inf| for each queue point in order.
  std::vector<double> distances;
  /// Distance of P_inf from the line through the first two queue points,
  /// relative to the spacing of those points.
  double incidence = 0.0;
};

struct QueueReport {
  std::array<QueueLine, 4> lines;
  /// |cos| of the angle between the S1 and S3 lines, and between S2 and S4.
  double perpendicular_13 = 0.0;
  double perpendicular_24 = 0.0;
  bool pass = false;
};

/// Checks the four index-mod-4 queues S_i = {P_i, P_{i+4}, ...} of a spiral
/// orbit against lines through P_inf. Needs at least 12 points.
QueueReport orderly_queues_check(const SpiralState<double>& state, double tol);

template <class T>
QueueReport orderly_queues_check(const SpiralState<T>& state, double tol) {
  SpiralState<double> s;
  for (const auto& p : state.points) s.points.push_back(to_float(p));
  s.p_infinity = to_float(state.p_infinity);
  return orderly_queues_check(s, tol);
}

struct SimilarityRelationResiduals {
  /// Relative deviation of |FG|, |GH|, |HF| from lambda * |DE|, |EF|, |FD|.
  double ratio = 0.0;
  /// |cos| between the symmetry axes of DEF and FGH.
  double axis_cos = 0.0;
  double lambda = 0.0;
};

/// For isosceles DEF with apex F, measures how far FGH (G = C(D,E,F),
/// H = C(E,F,G)) is from a copy of DEF scaled by lambda with a perpendicular
/// axis of symmetry.
SimilarityRelationResiduals similarity_relation_residuals(const Point2& d, const Point2& e, const Point2& f);

}  // namespace ccset
