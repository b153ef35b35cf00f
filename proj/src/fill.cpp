#include "ccset/fill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

#include "ccset/spiral.hpp"

namespace ccset {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest |y| (in units of |IA|) tolerated for base points that should sit on
// the perpendicular through I.
constexpr double kBaseLineTolerance = 1e-6;

struct RowPoint {
  std::size_t index;
  Point2 normalized;
};

// Distance from each y in a uniform grid on [0,1] (spacing h) to the nearest
// normalized cloud point, maximized.
double measure_segment_covering(std::vector<Point2> cloud, double h) {
  std::sort(cloud.begin(), cloud.end(), [](const Point2& p, const Point2& q) { return p.y < q.y; });
  double worst = 0.0;
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / h));
  for (std::size_t s = 0; s <= steps; ++s) {
    const Point2 g{0.0, static_cast<double>(s) * h};
    auto it = std::lower_bound(cloud.begin(), cloud.end(), g.y, [](const Point2& p, double y) { return p.y < y; });
    double best = std::numeric_limits<double>::infinity();
    for (auto up = it; up != cloud.end() && up->y - g.y < best; ++up) best = std::min(best, distance(*up, g));
    for (auto down = it; down != cloud.begin();) {
      --down;
      if (g.y - down->y >= best) break;
      best = std::min(best, distance(*down, g));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

struct QuadFrame {
  Similarity<double> frame;
  Similarity<double> inverse;
};

// Frame with the foot of the apex on the base line at the origin and the
// apex at (0,1).
QuadFrame quad_frame(const Point2& apex, const Similarity<double>& base_frame) {
  const Point2 p0 = base_frame(Point2{0.0, 0.0});
  const Point2 p1 = base_frame(Point2{0.0, 1.0});
  const Point2 dir = p1 - p0;
  const double t = dot(apex - p0, dir) / norm_sq(dir);
  const Point2 foot = p0 + t * dir;
  if (distance(apex, foot) <= 1e-12 * norm(dir)) throw Error(ErrorKind::InvalidArgument, "apex lies on the base line");
  QuadFrame q;
  q.frame = similarity_from_pairs(Point2{0.0, 0.0}, Point2{0.0, 1.0}, foot, apex);
  q.inverse = q.frame.inverse();
  return q;
}

std::size_t find_or_seed(Derivation& d, const Point2& p) {
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d.point(i) == p) return i;
  }
  return d.add_seed(p);
}

}  // namespace

FillCloud segment_fill(Derivation d, std::optional<std::size_t> i_index, const Point2& endpoint_i,
                       std::size_t a_index, const std::vector<std::size_t>& base, int depth, int width) {
  if (depth < 0 || depth > 24) throw Error(ErrorKind::InvalidArgument, "depth must be in [0, 24]");
  if (width < 1) throw Error(ErrorKind::InvalidArgument, "width must be positive");
  if (base.size() < static_cast<std::size_t>(width)) {
    throw Error(ErrorKind::InsufficientSequence,
                "base sequence has " + std::to_string(base.size()) + " points, width needs " + std::to_string(width));
  }
  const Point2 a_point = d.point(a_index);
  if (endpoint_i == a_point) throw Error(ErrorKind::DegeneratePair, "I and A coincide");
  if (i_index && !(d.point(*i_index) == endpoint_i)) {
    throw Error(ErrorKind::InvalidArgument, "i_index does not hold I");
  }

  FillCloud cloud;
  cloud.frame = similarity_from_pairs(Point2{0.0, 0.0}, Point2{0.0, 1.0}, endpoint_i, a_point);
  const Similarity<double> inv = cloud.frame.inverse();
  const double length = distance(endpoint_i, a_point);

  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t idx : base) {
    const Point2 q = inv(d.point(idx));
    if (std::fabs(q.y) > kBaseLineTolerance) {
      throw Error(ErrorKind::InvalidArgument, "base point off the perpendicular through I");
    }
    const double offset = std::fabs(q.x);
    if (!(offset > 0.0 && offset < previous)) {
      throw Error(ErrorKind::InvalidArgument, "base sequence must approach I monotonically");
    }
    previous = offset;
  }

  const std::size_t top = std::size_t{1} << depth;
  std::vector<std::vector<RowPoint>> rows(top + 1);
  for (std::size_t n = base.size() - static_cast<std::size_t>(width); n < base.size(); ++n) {
    rows[0].push_back({base[n], inv(d.point(base[n]))});
  }

  // Axis point of row k: A on top, I at the bottom when constructed, and
  // otherwise the row point nearest the axis standing in for the limit.
  const auto axis = [&](std::size_t k) -> std::pair<std::size_t, bool> {
    if (k == top) return {a_index, false};
    if (k == 0 && i_index) return {*i_index, false};
    const auto& row = rows[k];
    const auto it = std::min_element(row.begin(), row.end(), [](const RowPoint& p, const RowPoint& q) {
      return std::fabs(p.normalized.x) < std::fabs(q.normalized.x);
    });
    return {it->index, true};
  };

  for (int n = 1; n <= depth; ++n) {
    const std::size_t step = std::size_t{1} << (depth - n);
    for (std::size_t a = 1; a < (std::size_t{1} << n); a += 2) {
      const std::size_t k = a * step;
      const std::size_t e = axis(k + step).first;
      const auto [f, f_in_row] = axis(k - step);
      for (const auto& g : rows[k - step]) {
        if (f_in_row && g.index == f) continue;
        std::size_t idx = 0;
        try {
          idx = d.add_center(e, f, g.index);
        } catch (const Error&) {
          throw Error(ErrorKind::DegenerateTriple, "axis stand-ins made a collinear step at height " +
                                                       std::to_string(k) + "/" + std::to_string(top));
        }
        rows[k].push_back({idx, inv(d.point(idx))});
      }
      if (rows[k].empty()) {
        throw Error(ErrorKind::InsufficientSequence, "row " + std::to_string(k - step) + "/" + std::to_string(top) +
                                                         " ran out of points; increase width");
      }
    }
  }

  std::vector<Point2> normalized;
  const auto keep = [&](std::size_t idx, const Point2& q) {
    cloud.indices.push_back(idx);
    cloud.points.push_back(d.point(idx));
    normalized.push_back(q);
  };
  if (i_index) keep(*i_index, Point2{0.0, 0.0});
  const double retain = depth == 0 ? std::numeric_limits<double>::infinity() : std::ldexp(1.0, -(depth + 2));
  for (std::size_t k = 0; k < top; ++k) {
    const auto& row = rows[k];
    if (row.empty()) continue;
    const std::size_t nearest = axis(k).first;
    for (const auto& p : row) {
      if (p.index == nearest || std::fabs(p.normalized.x) <= retain) keep(p.index, p.normalized);
    }
  }
  keep(a_index, Point2{0.0, 1.0});

  const double target = std::ldexp(1.0, -depth);
  if (depth > 0) {
    const double h = std::ldexp(1.0, -(depth + 4));
    const double measured = measure_segment_covering(normalized, h) + h / 2;
    if (measured > target) {
      std::ostringstream msg;
      msg << "covering radius " << measured << " exceeds 2^-" << depth << "; deepen the base sequence";
      throw Error(ErrorKind::InsufficientSequence, msg.str());
    }
  }
  cloud.resolution = target * length;
  cloud.derivation = std::move(d);
  return cloud;
}

FillCloud segment_fill(const Point2& endpoint_i, const Point2& endpoint_a, const std::vector<Point2>& base_seq,
                       int depth, int width) {
  Derivation d(kDefaultFloatTolerance);
  const std::size_t i = d.add_seed(endpoint_i);
  const std::size_t a = d.add_seed(endpoint_a);
  std::vector<std::size_t> base;
  for (const auto& p : base_seq) base.push_back(d.add_seed(p));
  return segment_fill(std::move(d), i, endpoint_i, a, base, depth, width);
}

FillCloud line_cloud(const Point2& endpoint_i, const Point2& endpoint_a, const std::vector<Point2>& points) {
  if (endpoint_i == endpoint_a) throw Error(ErrorKind::DegeneratePair, "I and A coincide");
  FillCloud cloud;
  cloud.derivation = Derivation(kDefaultFloatTolerance);
  cloud.frame = similarity_from_pairs(Point2{0.0, 0.0}, Point2{0.0, 1.0}, endpoint_i, endpoint_a);
  const auto inv = cloud.frame.inverse();
  std::vector<double> heights;
  for (const auto& p : points) {
    cloud.indices.push_back(cloud.derivation.add_seed(p));
    cloud.points.push_back(p);
    heights.push_back(inv(p).y);
  }
  std::sort(heights.begin(), heights.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < heights.size(); ++i) gap = std::max(gap, heights[i] - heights[i - 1]);
  cloud.resolution = gap / 2 * distance(endpoint_i, endpoint_a);
  return cloud;
}

namespace {

struct Param {
  double value;
  std::size_t index;
};

std::vector<Param> base_params(const FillCloud& base, const Similarity<double>& inverse) {
  std::vector<Param> params;
  for (std::size_t i = 0; i < base.points.size(); ++i) params.push_back({inverse(base.points[i]).x, base.indices[i]});
  std::sort(params.begin(), params.end(), [](const Param& p, const Param& q) { return p.value < q.value; });
  return params;
}

}  // namespace

FillCloud quad_fill(const Point2& apex, const FillCloud& base_cloud, const QuadPatch<double>& patch, int grid) {
  if (grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  if (base_cloud.points.empty()) throw Error(ErrorKind::InvalidArgument, "empty base cloud");
  FillCloud cloud;
  cloud.derivation = base_cloud.derivation;
  Derivation& d = cloud.derivation;
  const std::size_t apex_index = find_or_seed(d, apex);

  const QuadFrame q = quad_frame(apex, base_cloud.frame);
  cloud.frame = q.frame;
  const auto params = base_params(base_cloud, q.inverse);

  const double res = base_cloud.resolution / q.frame.scale();
  const double width = std::min(patch.b - patch.a, patch.d - patch.c);
  const double spacing = grid > 1 ? width / (grid - 1) : width;
  const double slack = 1e-9 * spacing;
  if (res > spacing / 2 + slack) {
    std::ostringstream msg;
    msg << "base resolution " << res << " is coarser than half the grid spacing " << spacing / 2;
    throw Error(ErrorKind::ResolutionTooCoarse, msg.str());
  }

  const auto snap = [&](double value) {
    auto it = std::lower_bound(params.begin(), params.end(), value,
                               [](const Param& p, double v) { return p.value < v; });
    const Param* best = nullptr;
    if (it != params.end()) best = &*it;
    if (it != params.begin() && (!best || value - std::prev(it)->value < best->value - value)) best = &*std::prev(it);
    if (std::fabs(best->value - value) > std::max(res, spacing / 2) + slack) {
      std::ostringstream msg;
      msg << "no base point within " << res << " of parameter " << value;
      throw Error(ErrorKind::ResolutionTooCoarse, msg.str());
    }
    return best->index;
  };

  const auto lattice = [&](double lo, double hi, int i) {
    return grid > 1 ? lo + (hi - lo) * static_cast<double>(i) / (grid - 1) : lo;
  };
  std::set<std::pair<std::size_t, std::size_t>> emitted;
  for (int i = 0; i < grid; ++i) {
    const std::size_t u = snap(lattice(patch.a, patch.b, i));
    for (int j = 0; j < grid; ++j) {
      const std::size_t v = snap(lattice(patch.c, patch.d, j));
      if (!emitted.insert({u, v}).second) continue;
      std::size_t idx = 0;
      try {
        idx = d.add_center(apex_index, u, v);
      } catch (const Error&) {
        throw Error(ErrorKind::DegenerateTriple, "apex and snapped base points are collinear");
      }
      cloud.indices.push_back(idx);
      cloud.points.push_back(d.point(idx));
    }
  }

  // A posteriori covering radius over the quadrilateral, sampled on a lattice
  // of its bounding box and filtered by quad_map_inverse.
  std::vector<Point2> local;
  for (const auto& p : cloud.points) local.push_back(q.inverse(p));
  const auto corners = patch.vertices();
  double x0 = corners[0].x, x1 = x0, y0 = corners[0].y, y1 = y0;
  for (const auto& c : corners) {
    x0 = std::min(x0, c.x), x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y), y1 = std::max(y1, c.y);
  }
  const int samples = std::max(16, 4 * grid);
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    for (int j = 0; j <= samples; ++j) {
      const Point2 s{x0 + (x1 - x0) * i / samples, y0 + (y1 - y0) * j / samples};
      if (!quad_map_inverse(s, patch)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : local) best = std::min(best, distance_sq(p, s));
      worst = std::max(worst, best);
    }
  }
  cloud.resolution = std::sqrt(worst) * q.frame.scale();
  return cloud;
}

namespace {

struct Candidate {
  std::size_t u;
  std::size_t v;
  Point2 point;
  double psi;
  double delta;
};

// Everything the final circle search needs from one planner attempt.
struct Stage {
  Derivation* d;
  std::size_t apex;
  QuadFrame frame;
  QuadPatch<double> patch;
  std::vector<Param> lower;  // base parameters inside [a, b]
  std::vector<Param> upper;  // base parameters inside [c, d]
  Point2 target;
  Point2 reference;  // unit direction from the target to the patch center
};

double polar(const Stage& s, const Point2& p) {
  const Point2 r = p - s.target;
  return std::atan2(cross(s.reference, r), dot(s.reference, r));
}

// Points C(apex, U, V) near the circle about the target with radius
// `radius`: for each U, the circle meets the line v -> f(u, v) at up to two
// parameters, each snapped to its neighbouring V on either side.
std::vector<Candidate> circle_candidates(const Stage& s, double radius) {
  std::vector<Candidate> out;
  const Point2 t = s.frame.inverse(s.target);
  const double r = radius / s.frame.frame.scale();
  const Point2 apex = s.d->point(s.apex);
  for (const auto& up : s.lower) {
    const double u = up.value;
    const Point2 p0{u / 2 - t.x, 0.5 - t.y};
    const Point2 w{0.5, u / 2};
    const double qa = dot(w, w);
    const double qb = 2 * dot(w, p0);
    const double qc = dot(p0, p0) - r * r;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) continue;
    const double root = std::sqrt(disc);
    for (double v : {(-qb - root) / (2 * qa), (-qb + root) / (2 * qa)}) {
      if (v < s.patch.c || v > s.patch.d) continue;
      auto it = std::lower_bound(s.upper.begin(), s.upper.end(), v,
                                 [](const Param& p, double x) { return p.value < x; });
      for (auto n : {it == s.upper.begin() ? s.upper.end() : std::prev(it), it}) {
        if (n == s.upper.end()) continue;
        Point2 z;
        try {
          z = circumcenter(apex, s.d->point(up.index), s.d->point(n->index));
        } catch (const Error&) {
          continue;
        }
        out.push_back({up.index, n->index, z, polar(s, z), std::fabs(distance(z, s.target) - radius)});
      }
    }
  }
  return out;
}

std::vector<Candidate> best_in(const std::vector<Candidate>& all, double lo, double hi, std::size_t count) {
  std::vector<Candidate> sector;
  for (const auto& c : all) {
    if (c.psi >= lo && c.psi <= hi) sector.push_back(c);
  }
  std::sort(sector.begin(), sector.end(), [](const Candidate& a, const Candidate& b) {
    return a.delta < b.delta || (a.delta == b.delta && std::tie(a.u, a.v) < std::tie(b.u, b.v));
  });
  if (sector.size() > count) sector.resize(count);
  return sector;
}

struct Triple {
  Candidate x, y, z;
  Point2 center;
  double error = std::numeric_limits<double>::infinity();
};

// Three points in successive thirds of the arc: X is taken from the first
// third, then Y and Z are matched to the circle through X so only two
// radial deviations enter the final center. Triples are ranked by the error
// of the center actually computed.
Triple search_triple(const Stage& s) {
  constexpr std::size_t kFirst = 8;
  constexpr std::size_t kOthers = 16;
  Triple best;
  const Point2 center = s.frame.frame(quad_map((s.patch.a + s.patch.b) / 2, (s.patch.c + s.patch.d) / 2));
  const auto initial = circle_candidates(s, distance(center, s.target));
  if (initial.size() < 3) return best;
  // Sector bounds at the angular terciles of the candidates; the arc inside
  // the patch need not be connected, so equal angle ranges can come up empty.
  std::vector<double> psi;
  for (const auto& c : initial) psi.push_back(c.psi);
  std::sort(psi.begin(), psi.end());
  const double lo = psi.front(), hi = psi.back();
  const double cut1 = psi[psi.size() / 3], cut2 = psi[2 * psi.size() / 3];
  if (!(lo < cut1 && cut1 < cut2 && cut2 < hi)) return best;

  for (const auto& x : best_in(initial, -kPi - 1, std::nextafter(cut1, lo), kFirst)) {
    const auto ring = circle_candidates(s, distance(x.point, s.target));
    const auto ys = best_in(ring, cut1, std::nextafter(cut2, cut1), kOthers);
    const auto zs = best_in(ring, cut2, kPi + 1, kOthers);
    for (const auto& y : ys) {
      for (const auto& z : zs) {
        Point2 c;
        try {
          c = circumcenter(x.point, y.point, z.point);
        } catch (const Error&) {
          continue;
        }
        const double err = distance(c, s.target);
        if (err < best.error) best = {x, y, z, c, err};
      }
    }
  }
  return best;
}

struct Attempt {
  Derivation derivation;
  std::size_t final_index = 0;
  double error = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  double lambda = 0.0;
};

Attempt run_attempt(const IsoscelesResult& iso, const Point2& target, int depth, int grid) {
  Derivation d = iso.derivation;
  const std::size_t x = iso.indices[0];
  const std::size_t y = iso.indices[1];
  std::size_t apex = iso.indices[2];
  // An apex angle at most pi/3 is doubled once more, so lambda <= 1/sqrt(3).
  if (iso.apex_angle <= kPi / 3 + 1e-10) apex = d.add_center(x, y, apex);

  Attempt out;
  out.beta = vertex_angle(d.point(x), d.point(y), d.point(apex));

  const int width = depth + 4;
  std::vector<std::size_t> P{x, y, apex};
  const auto count = static_cast<std::size_t>(4 * width);
  while (P.size() < count) {
    const std::size_t n = P.size();
    P.push_back(d.add_center(P[n - 1], P[n - 2], P[n - 3]));
  }
  const auto f = similarity_from_pairs(d.point(P[0]), d.point(P[1]), d.point(P[2]), d.point(P[3]));
  const Point2 p_inf = fixed_point(f);
  out.lambda = f.scale();

  // The queue P3, P7, P11, ... lies on the perpendicular through P_inf to
  // the line of P1.
  std::vector<std::size_t> queue;
  for (std::size_t n = 2; n < P.size(); n += 4) queue.push_back(P[n]);
  const FillCloud segment = segment_fill(std::move(d), std::nullopt, p_inf, P[0], queue, depth, width);

  const Point2 apex_point = segment.derivation.point(P[2]);
  const QuadFrame qf = quad_frame(apex_point, segment.frame);
  const double s = qf.inverse(segment.derivation.point(P[0])).x;
  std::array<double, 4> cuts{0.05 * s, 0.45 * s, 0.55 * s, 0.95 * s};
  std::sort(cuts.begin(), cuts.end());
  const auto patch = make_patch(cuts[0], cuts[1], cuts[2], cuts[3]);
  FillCloud quad = quad_fill(apex_point, segment, patch, grid);

  Stage stage{&quad.derivation, P[2], qf, patch, {}, {}, target, {}};
  for (const auto& p : base_params(segment, qf.inverse)) {
    if (p.value >= patch.a && p.value <= patch.b) stage.lower.push_back(p);
    if (p.value >= patch.c && p.value <= patch.d) stage.upper.push_back(p);
  }
  const Point2 center = qf.frame(quad_map((patch.a + patch.b) / 2, (patch.c + patch.d) / 2));
  const Point2 toward = center - target;
  const double len = norm(toward);
  stage.reference = len > 0 ? Point2{toward.x / len, toward.y / len} : Point2{1.0, 0.0};

  const Triple t = search_triple(stage);
  if (!std::isfinite(t.error)) return out;
  Derivation& q = quad.derivation;
  const std::size_t ix = q.add_center(P[2], t.x.u, t.x.v);
  const std::size_t iy = q.add_center(P[2], t.y.u, t.y.v);
  const std::size_t iz = q.add_center(P[2], t.z.u, t.z.v);
  const std::size_t last = q.add_center(ix, iy, iz);
  out.final_index = last;
  out.error = distance(q.point(last), target);
  out.derivation = std::move(q);
  return out;
}

}  // namespace

ReachResult reach(const Point2& target, const Triangle<double>& seed, double epsilon, const ReachOptions& options) {
  if (!(epsilon > 0)) {
    throw Error(ErrorKind::BudgetExceeded, "epsilon must be positive; the float pipeline cannot certify exact hits");
  }
  if (orientation(seed.a, seed.b, seed.c) == 0) throw Error(ErrorKind::CollinearSeed, "seed triangle is collinear");

  ReachResult result;
  {
    Derivation d(kDefaultFloatTolerance);
    const std::array<std::size_t, 3> s{d.add_seed(seed.a), d.add_seed(seed.b), d.add_seed(seed.c)};
    for (std::size_t i : s) {
      if (distance(d.point(i), target) <= epsilon) {
        result.target_index = i;
        result.point = d.point(i);
        result.error = distance(result.point, target);
        result.derivation = std::move(d);
        return result;
      }
    }
    const std::size_t c = d.add_center(s[0], s[1], s[2]);
    if (distance(d.point(c), target) <= epsilon) {
      result.target_index = c;
      result.point = d.point(c);
      result.error = distance(result.point, target);
      result.derivation = std::move(d);
      return result;
    }
  }

  const IsoscelesResult iso = isoscelize(seed.a, seed.b, seed.c);
  double best = std::numeric_limits<double>::infinity();
  int depth = options.depth;
  std::string last_failure;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt, depth += 2) {
    Attempt a;
    try {
      a = run_attempt(iso, target, depth, options.grid);
    } catch (const Error& e) {
      last_failure = e.what();
      continue;
    }
    best = std::min(best, a.error);
    if (a.error <= epsilon) {
      auto [pruned, index] = extract_ancestors(a.derivation, a.final_index);
      result.derivation = std::move(pruned);
      result.target_index = index;
      result.point = result.derivation.point(index);
      result.error = a.error;
      result.attempts = attempt + 1;
      result.depth = depth;
      result.beta = a.beta;
      result.lambda = a.lambda;
      return result;
    }
  }
  std::ostringstream msg;
  msg << "best error " << best << " exceeds epsilon " << epsilon << " after " << options.max_retries + 1
      << " attempts";
  if (!last_failure.empty()) msg << " (last stage failure: " << last_failure << ")";
  throw Error(ErrorKind::BudgetExceeded, msg.str());
}

}  // namespace ccset
