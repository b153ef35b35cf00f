#pragma once

#include <array>
#include <optional>

#include "ccset/geometry.hpp"

namespace ccset {

/// Relative agreement used to call a float triangle equilateral.
inline constexpr double kEquilateralTolerance = 1e-12;

template <class T>
bool is_equilateral(const Point<T>& d, const Point<T>& e, const Point<T>& f) {
  const T de = distance_sq(d, e);
  const T df = distance_sq(d, f);
  const T ef = distance_sq(e, f);
  if constexpr (is_exact_v<T>) {
    return de == df && df == ef;
  } else {
    const double hi = std::max({de, df, ef});
    const double lo = std::min({de, df, ef});
    return hi - lo <= kEquilateralTolerance * hi;
  }
}

template <class T>
struct ShrinkWitness {
  Triangle<T> triangle;
  T radius_sq;
  bool equilateral_branch = false;
};

/// Finds a triangle on the points {d, e, f, G = C(d,e,f)} (plus H = C(d,e,G)
/// in the equilateral case) whose circumradius is strictly smaller than that
/// of def. Candidates with G on the side line are skipped.
template <class T>
ShrinkWitness<T> shrink_witness(const Point<T>& d, const Point<T>& e, const Point<T>& f) {
  const Point<T> g = circumcenter(d, e, f);
  const T original = distance_sq(g, d);

  if (is_equilateral(d, e, f)) {
    const Point<T> h = circumcenter(d, e, g);
    const Triangle<T> t{d, g, h};
    return {t, circumradius_sq(d, g, h), true};
  }

  const std::array<Triangle<T>, 3> candidates{{{d, e, g}, {d, f, g}, {e, f, g}}};
  std::optional<ShrinkWitness<T>> best;
  for (const auto& c : candidates) {
    if (orientation(c.a, c.b, c.c) == 0) continue;
    const T r = circumradius_sq(c.a, c.b, c.c);
    if (r < original && (!best || r < best->radius_sq)) best = ShrinkWitness<T>{c, r, false};
  }
  if (!best) {
    throw Error(ErrorKind::DegenerateCandidate, "no candidate triangle has a smaller circumradius");
  }
  return *best;
}

enum class CenterIterate { G, H, I };

enum class IteratedClause { OnLineDE, Collinear, EquilateralDegenerate };

template <class T>
struct IteratedCenterReport {
  IteratedClause clause;
  /// Valid for OnLineDE: the first iterate found on line de.
  CenterIterate which = CenterIterate::G;
  /// The iterates that could be formed (G, then H, then I).
  std::array<std::optional<Point<T>>, 3> iterates;
  /// True when the clause was re-checked with the kernel and holds.
  bool verified = false;
};

/// G = C(d,e,f), H = C(d,e,G), I = C(d,e,H): reports which alternative of
/// the iterated-center exercise holds and re-checks it.
template <class T>
IteratedCenterReport<T> iterated_center_report(const Point<T>& d, const Point<T>& e, const Point<T>& f) {
  if (orientation(d, e, f) == 0) throw Error(ErrorKind::CollinearInput, "f lies on line de");

  IteratedCenterReport<T> report{IteratedClause::Collinear};
  Point<T> previous = f;
  for (std::size_t k = 0; k < 3; ++k) {
    const Point<T> next = circumcenter(d, e, previous);
    report.iterates[k] = next;
    if (orientation(d, e, next) == 0) {
      report.clause = IteratedClause::OnLineDE;
      report.which = static_cast<CenterIterate>(k);
      report.verified = true;
      return report;
    }
    previous = next;
  }

  const Point<T>& g = *report.iterates[0];
  const Point<T>& h = *report.iterates[1];
  const Point<T>& i = *report.iterates[2];

  const auto same = [](const Point<T>& p, const Point<T>& q) {
    if constexpr (is_exact_v<T>) {
      return p == q;
    } else {
      const double scale = std::max({1.0, norm(p), norm(q)});
      return distance(p, q) <= 1e-9 * scale;
    }
  };

  if (same(g, h) || same(h, i) || same(g, i)) {
    report.clause = IteratedClause::EquilateralDegenerate;
    bool ok = is_equilateral(d, g, h);
    if constexpr (!is_exact_v<T>) {
      // The repeat comes from float agreement, so the equilateral check gets
      // the same relative slack.
      const double hi = std::max({distance_sq(d, g), distance_sq(d, h), distance_sq(g, h)});
      const double lo = std::min({distance_sq(d, g), distance_sq(d, h), distance_sq(g, h)});
      ok = hi - lo <= 1e-8 * hi;
    }
    if (ok) {
      const Point<T> c = circumcenter(d, g, h);
      const Point<T> u = e - d;
      const Point<T> v = c - d;
      if constexpr (is_exact_v<T>) {
        ok = cross(u, v) == T(0);
      } else {
        ok = std::fabs(cross(u, v)) <= 1e-8 * std::max(norm_sq(u), norm_sq(v));
      }
    }
    report.verified = ok;
    return report;
  }

  report.clause = IteratedClause::Collinear;
  report.verified = orientation(g, h, i) == 0;
  return report;
}

}  // namespace ccset
