#pragma once

// Constructive density: rows of dyadic heights filling a segment, the
// quadrilateral map f(u, v) = C((0,1), (u,0), (v,0)), and the planner that
// chains isosceles start, spiral, segment and quadrilateral into a
// derivation ending near an arbitrary target.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ccset/derivation.hpp"
#include "ccset/geometry.hpp"

namespace ccset {

/// f(u, v) = ((u + v) / 2, (u v + 1) / 2), the center of the circle through
/// (0,1), (u,0) and (v,0).
template <class T>
Point<T> quad_map(const T& u, const T& v) {
  if (u == v) throw Error(ErrorKind::EqualParameters, "quad_map needs distinct base points");
  return {T((u + v) / 2), T((u * v + 1) / 2)};
}

/// Parameters a < b < c < d; f maps [a,b] x [c,d] onto the quadrilateral
/// f(a,c), f(a,d), f(b,d), f(b,c).
template <class T>
struct QuadPatch {
  T a, b, c, d;

  std::array<Point<T>, 4> vertices() const {
    return {quad_map(a, c), quad_map(a, d), quad_map(b, d), quad_map(b, c)};
  }
};

template <class T>
QuadPatch<T> make_patch(const T& a, const T& b, const T& c, const T& d) {
  if (!(a < b && b < c && c < d)) throw Error(ErrorKind::InvalidPatch, "patch needs a < b < c < d");
  QuadPatch<T> patch{a, b, c, d};
  const auto v = patch.vertices();
  int turn = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const int o = orientation(v[i], v[(i + 1) % 4], v[(i + 2) % 4]);
    if (o == 0 || (turn != 0 && o != turn)) throw Error(ErrorKind::InvalidPatch, "patch image is not a convex quadrilateral");
    turn = o;
  }
  return patch;
}

/// Inverse of quad_map on a patch: u, v are the roots of
/// t^2 - 2 x t + (2 y - 1) with u the smaller. Membership is decided with
/// squares only, so it is exact on the rational tower even when the roots
/// are irrational; the returned roots are then the tower's square root.
template <class T>
std::optional<std::pair<T, T>> quad_map_inverse(const Point<T>& p, const QuadPatch<T>& patch) {
  const T disc = T(p.x * p.x - (2 * p.y - 1));
  if (disc < T(0)) return std::nullopt;
  // u = x - s, v = x + s with s = sqrt(disc) >= 0.
  const T lo = std::max(T(p.x - patch.b), T(patch.c - p.x));
  const T hi = std::min(T(p.x - patch.a), T(patch.d - p.x));
  if (hi < T(0) || lo > hi) return std::nullopt;
  if (lo > T(0) && disc < T(lo * lo)) return std::nullopt;
  if (disc > T(hi * hi)) return std::nullopt;
  const T s = scalar_sqrt(disc);
  return std::make_pair(T(p.x - s), T(p.x + s));
}

struct FillCloud {
  std::vector<Point2> points;
  /// Derivation index of each entry of `points`.
  std::vector<std::size_t> indices;
  Derivation derivation;
  /// Normalized frame to actual coordinates.
  Similarity<double> frame;
  /// Covering radius of the target region, in actual units.
  double resolution = 0.0;
};

/// Segment filling from a derivation that already holds A and the base
/// sequence (and I when it has been constructed). With `i_index` empty, I is
/// only the limit of the base sequence and never enters the derivation.
FillCloud segment_fill(Derivation derivation, std::optional<std::size_t> i_index, const Point2& endpoint_i,
                       std::size_t a_index, const std::vector<std::size_t>& base, int depth, int width);

/// Same, with I, A and the base sequence entered as seeds in that order.
FillCloud segment_fill(const Point2& endpoint_i, const Point2& endpoint_a, const std::vector<Point2>& base_seq,
                       int depth, int width);

/// A cloud of seeds on segment IA; resolution is half the largest gap.
FillCloud line_cloud(const Point2& endpoint_i, const Point2& endpoint_a, const std::vector<Point2>& points);

/// Emits C(apex, U, V) for a grid x grid lattice of (u, v) in the patch,
/// snapped to base-cloud points. Patch parameters are in the frame with the
/// foot of the apex on the base line at the origin and the apex at (0,1).
/// The apex is looked up in the base derivation and entered as a seed when
/// absent.
FillCloud quad_fill(const Point2& apex, const FillCloud& base_cloud, const QuadPatch<double>& patch, int grid);

struct ReachOptions {
  int depth = 8;
  int grid = 16;
  int max_retries = 3;
};

struct ReachResult {
  Derivation derivation;
  std::size_t target_index = 0;
  Point2 point;
  double error = 0.0;
  int attempts = 0;
  int depth = 0;
  /// Apex angle and ratio of the spiral that was used (0 when short-circuited).
  double beta = 0.0;
  double lambda = 0.0;
};

/// Builds a derivation from the three seed vertices whose final point lies
/// within epsilon of target. Pruned to the ancestors of that point.
ReachResult reach(const Point2& target, const Triangle<double>& seed, double epsilon, const ReachOptions& options = {});

}  // namespace ccset
