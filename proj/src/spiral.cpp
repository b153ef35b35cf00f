#include "ccset/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ccset {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTolerance = 1e-10;
constexpr int kMaxDoublings = 64;

Point2 midpoint(const Point2& a, const Point2& b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

}  // namespace

double lambda_of(double beta) {
  if (!(beta > 0.0 && beta < kPi)) throw Error(ErrorKind::OutOfRange, "vertex angle must lie in (0, pi)");
  return (1.0 / std::tan(beta / 2) - 1.0 / std::tan(beta)) / 2;
}

double vertex_angle(const Point2& p, const Point2& q, const Point2& apex) {
  const Point2 u = p - apex;
  const Point2 v = q - apex;
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

IsoscelesResult isoscelize(const Point2& p, const Point2& q, const Point2& r) {
  if (orientation(p, q, r) == 0) throw Error(ErrorKind::CollinearInput, "seed points are collinear");

  Derivation base(kDefaultFloatTolerance);
  const std::array<std::size_t, 3> seeds{base.add_seed(p), base.add_seed(q), base.add_seed(r)};
  const std::size_t center = base.add_center(seeds[0], seeds[1], seeds[2]);
  const Point2 o = base.point(center);

  struct Candidate {
    std::size_t x, y;
    double angle;
  };
  std::vector<Candidate> candidates;
  const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : pairs) {
    const Point2& x = base.point(seeds[i]);
    const Point2& y = base.point(seeds[j]);
    if (orientation(x, y, o) == 0) continue;
    const double angle = vertex_angle(x, y, o);
    if (angle <= 2 * kPi / 3 + kAngleTolerance) candidates.push_back({seeds[i], seeds[j], angle});
  }
  // Smallest central angle first; near-ties keep input order.
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.angle < b.angle - 1e-12;
  });

  for (const auto& c : candidates) {
    Derivation trial = base;
    std::size_t apex = center;
    double angle = c.angle;
    int doublings = 0;
    bool degenerate = false;
    // Each center of (x, y, apex) doubles the apex angle: the inscribed
    // angle becomes a central angle.
    while (angle <= kPi / 6 + kAngleTolerance) {
      if (++doublings > kMaxDoublings) {
        degenerate = true;
        break;
      }
      try {
        apex = trial.add_center(c.x, c.y, apex);
      } catch (const Error&) {
        degenerate = true;
        break;
      }
      angle = vertex_angle(trial.point(c.x), trial.point(c.y), trial.point(apex));
    }
    if (degenerate || !(angle > kPi / 6 && angle < 5 * kPi / 6)) continue;
    IsoscelesResult result;
    result.triangle = {trial.point(c.x), trial.point(c.y), trial.point(apex)};
    result.derivation = std::move(trial);
    result.indices = {c.x, c.y, apex};
    result.apex_angle = angle;
    result.doublings = doublings;
    return result;
  }
  throw Error(ErrorKind::DegenerateDoubling, "every central triangle degenerated while doubling its apex angle");
}

QueueReport orderly_queues_check(const SpiralState<double>& state, double tol) {
  const auto& P = state.points;
  if (P.size() < 12) throw Error(ErrorKind::TooFewPoints, "queue check needs at least 12 points");
  const Point2 center = state.p_infinity;

  QueueReport report;
  bool pass = true;
  for (std::size_t q = 0; q < 4; ++q) {
    QueueLine& line = report.lines[q];
    std::vector<Point2> queue;
    for (std::size_t n = q; n < P.size(); n += 4) queue.push_back(P[n]);

    const Point2 first = queue[0] - center;
    const double len = norm(first);
    line.direction = len > 0 ? Point2{first.x / len, first.y / len} : Point2{1.0, 0.0};
    for (const auto& p : queue) line.distances.push_back(distance(p, center));
    for (std::size_t k = 1; k < queue.size(); ++k) {
      const Point2 rel = queue[k] - center;
      const double r = norm(rel);
      if (r == 0.0) continue;
      line.residual = std::max(line.residual, std::fabs(cross(line.direction, rel)) / r);
    }
    const Point2 chord = queue[1] - queue[0];
    const double spacing = norm(chord);
    line.incidence = spacing > 0 ? std::fabs(cross(chord, center - queue[0])) / (spacing * spacing) : 0.0;
    pass = pass && line.residual <= tol && line.incidence <= tol;
  }
  report.perpendicular_13 = std::fabs(dot(report.lines[0].direction, report.lines[2].direction));
  report.perpendicular_24 = std::fabs(dot(report.lines[1].direction, report.lines[3].direction));
  report.pass = pass && report.perpendicular_13 <= tol && report.perpendicular_24 <= tol;
  return report;
}

SimilarityRelationResiduals similarity_relation_residuals(const Point2& d, const Point2& e, const Point2& f) {
  const Point2 g = circumcenter(d, e, f);
  const Point2 h = circumcenter(e, f, g);
  SimilarityRelationResiduals out;
  out.lambda = lambda_of(vertex_angle(d, e, f));

  const std::array<std::pair<double, double>, 3> sides{{
      {distance(f, g), distance(d, e)},
      {distance(g, h), distance(e, f)},
      {distance(h, f), distance(f, d)},
  }};
  for (auto [image, original] : sides) {
    const double expected = out.lambda * original;
    out.ratio = std::max(out.ratio, std::fabs(image - expected) / expected);
  }
  const Point2 axis1 = midpoint(d, e) - f;
  const Point2 axis2 = midpoint(f, g) - h;
  out.axis_cos = std::fabs(dot(axis1, axis2)) / (norm(axis1) * norm(axis2));
  return out;
}

}  // namespace ccset
