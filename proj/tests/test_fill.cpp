#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "ccset/fill.hpp"
#include "oracles.hpp"

using namespace ccset;
using Q = Rational;

namespace {

std::vector<Point2> geometric_base(double ratio, int count) {
  std::vector<Point2> base;
  for (int j = 0; j < count; ++j) base.push_back({std::pow(ratio, j), 0.0});
  return base;
}

// Base cloud on the x-axis with points k/den for x in [lo, hi]; the apex
// (0,1) then sits in the standard frame.
FillCloud axis_cloud(int lo, int hi, int den) {
  std::vector<Point2> pts;
  for (int k = lo * den; k <= hi * den; ++k) pts.push_back({static_cast<double>(k) / den, 0.0});
  return line_cloud({lo - 1.0, 0.0}, {hi + 1.0, 0.0}, pts);
}

}  // namespace

TEST_CASE("quad_map examples") {
  CHECK(quad_map(Q(1), Q(-1)) == ExactPoint{Q(0), Q(0)});
  CHECK(quad_map(Q(0), Q(2)) == ExactPoint{Q(1), oracle::ratio(1, 2)});
  CHECK(quad_map(Q(3), Q(5)) == ExactPoint{Q(4), Q(8)});
  CHECK(oracle::circumcenter(ExactPoint{Q(0), Q(1)}, ExactPoint{Q(3), Q(0)}, ExactPoint{Q(5), Q(0)}) ==
        ExactPoint{Q(4), Q(8)});
  try {
    quad_map(Q(2), Q(2));
    FAIL("expected EqualParameters");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EqualParameters);
  }
}

TEST_CASE("patches must be ordered") {
  CHECK_NOTHROW(make_patch(0.0, 1.0, 2.0, 3.0));
  CHECK_THROWS_AS(make_patch(0.0, 2.0, 1.0, 3.0), Error);
  CHECK_THROWS_AS(make_patch(0.0, 0.0, 2.0, 3.0), Error);
}

TEST_CASE("quad_map_inverse examples") {
  const auto patch = make_patch(Q(0), Q(1), Q(2), Q(3));
  const auto r = quad_map_inverse(ExactPoint{oracle::ratio(3, 2), oracle::ratio(3, 2)}, patch);
  REQUIRE(r);
  CHECK(r->first == 1);
  CHECK(r->second == 2);
  CHECK_FALSE(quad_map_inverse(ExactPoint{Q(0), Q(5)}, patch));
  CHECK_FALSE(quad_map_inverse(ExactPoint{Q(10), Q(0)}, patch));
}

TEST_CASE("quad_map equals the kernel circumcenter exactly") {
  std::mt19937_64 rng(51);
  int done = 0;
  while (done < 10000) {
    const Q u = oracle::random_rational(rng, 10, 97), v = oracle::random_rational(rng, 10, 97);
    if (u == v) continue;
    const ExactPoint apex{Q(0), Q(1)}, pu{u, Q(0)}, pv{v, Q(0)};
    REQUIRE(quad_map(u, v) == circumcenter(apex, pu, pv));
    REQUIRE(quad_map(u, v) == oracle::circumcenter(apex, pu, pv));
    ++done;
  }
}

TEST_CASE("quad_map_inverse round-trips on a 64x64 grid") {
  const auto patch = make_patch(Q(0), Q(1), Q(2), Q(3));
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Q u = oracle::ratio(i, 63), v = Q(2) + oracle::ratio(j, 63);
      const auto r = quad_map_inverse(quad_map(u, v), patch);
      REQUIRE(r);
      REQUIRE(r->first == u);
      REQUIRE(r->second == v);
    }
  }
}

TEST_CASE("membership agrees with the winding number of the image quadrilateral") {
  const auto patch = make_patch(0.0, 1.0, 2.0, 3.0);
  const auto v = patch.vertices();
  const std::vector<Point2> poly(v.begin(), v.end());
  double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
  for (const auto& p : poly) x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ux(x0 - 0.5, x1 + 0.5), uy(y0 - 0.5, y1 + 0.5);
  int inside = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point2 p{ux(rng), uy(rng)};
    const bool a = quad_map_inverse(p, patch).has_value();
    const bool b = oracle::winding(poly, p) != 0;
    REQUIRE(a == b);
    inside += a;
  }
  CHECK(inside > 500);
}

TEST_CASE("segment_fill at depth 1 gives exact midpoints") {
  const auto base = geometric_base(0.5, 6);
  const auto cloud = segment_fill({0, 0}, {0, 1}, base, 1, 6);
  std::set<double> xs;
  for (const auto& g : base) xs.insert(g.x);
  int half = 0;
  for (const auto& p : cloud.points) {
    if (p.y != 0.5) continue;
    ++half;
    CHECK(xs.count(2 * p.x) == 1);
  }
  CHECK(half > 0);
  CHECK(verify(cloud.derivation, kDefaultFloatTolerance).pass);
}

TEST_CASE("segment_fill at depth 0 is the base case") {
  const auto base = geometric_base(0.5, 5);
  const auto cloud = segment_fill({0, 0}, {0, 1}, base, 0, 5);
  CHECK(cloud.resolution == doctest::Approx(1.0));
  std::set<std::pair<double, double>> got;
  for (const auto& p : cloud.points) got.insert({p.x, p.y});
  std::set<std::pair<double, double>> want{{0, 0}, {0, 1}};
  for (const auto& p : base) want.insert({p.x, p.y});
  for (const auto& p : got) CHECK(want.count(p) == 1);
  CHECK(got.count({0, 1}) == 1);
}

TEST_CASE("segment_fill at depth 8 covers the segment") {
  const auto cloud = segment_fill({0, 0}, {0, 1}, geometric_base(0.5, 24), 8, 24);
  CHECK(verify(cloud.derivation, 1e-9).pass);
  double worst = 0;
  for (int k = 0; k <= 1024; ++k) worst = std::max(worst, oracle::nearest(cloud.points, {0.0, k / 1024.0}));
  CHECK(worst <= 1.0 / 256);
}

TEST_CASE("segment_fill correctness in a general frame") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> ang(-3, 3), ratio(0.3, 0.7);
  for (int t = 0; t < 10; ++t) {
    const int depth = 2 + static_cast<int>(rng() % 5);
    const auto g = make_similarity(0.5 + (rng() % 100) / 20.0, ang(rng), oracle::random_point(rng));
    const Point2 i = g(Point2{0, 0}), a = g(Point2{0, 1});
    std::vector<Point2> base;
    for (const auto& p : geometric_base(ratio(rng), 3 * depth)) base.push_back(g(p));
    const auto cloud = segment_fill(i, a, base, depth, 3 * depth);
    REQUIRE(verify(cloud.derivation, kDefaultFloatTolerance).pass);
    REQUIRE(cloud.points.size() == cloud.indices.size());
    for (std::size_t n = 0; n < cloud.points.size(); ++n) {
      REQUIRE(cloud.derivation.point(cloud.indices[n]) == cloud.points[n]);
    }
    const double len = distance(i, a);
    for (std::size_t n = 0; n < cloud.points.size(); ++n) {
      // Base points sit off the segment by design; rows above them must hug it.
      const Point2 local = g.inverse()(cloud.points[n]);
      if (local.y < 0.5 / (1 << depth)) continue;
      REQUIRE(oracle::to_segment(cloud.points[n], i, a) <= cloud.resolution + 1e-12 * len);
    }
    REQUIRE(cloud.resolution <= len / (1 << depth) + 1e-12 * len);
    const int steps = 1 << (depth + 2);
    for (int k = 0; k <= steps; ++k) {
      const Point2 s = g(Point2{0.0, static_cast<double>(k) / steps});
      REQUIRE(oracle::nearest(cloud.points, s) <= cloud.resolution + 1e-12 * len);
    }
  }
}

TEST_CASE("segment_fill needs enough base points") {
  try {
    segment_fill({0, 0}, {0, 1}, geometric_base(0.9, 3), 6, 3);
    FAIL("expected InsufficientSequence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientSequence);
  }
}

TEST_CASE("quad_fill with a single grid point gives a vertex") {
  const auto base = line_cloud({-1, 0}, {4, 0}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  const auto patch = make_patch(0.0, 1.0, 2.0, 3.0);
  const auto cloud = quad_fill({0, 1}, base, patch, 1);
  REQUIRE(cloud.points.size() == 1);
  CHECK(distance(cloud.points[0], quad_map(0.0, 2.0)) <= 1e-15);
  CHECK(verify(cloud.derivation, kDefaultFloatTolerance).pass);
}

TEST_CASE("quad_fill covers the quadrilateral") {
  const auto base = axis_cloud(0, 3, 64);
  const auto patch = make_patch(0.0, 1.0, 2.0, 3.0);
  const auto cloud = quad_fill({0, 1}, base, patch, 32);
  CHECK(verify(cloud.derivation, kDefaultFloatTolerance).pass);
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0, 1), v(2, 3);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) worst = std::max(worst, oracle::nearest(cloud.points, quad_map(u(rng), v(rng))));
  CHECK(worst <= 0.1);
  CHECK(cloud.resolution <= 0.1);
}

TEST_CASE("quad_fill rejects a coarse base") {
  const auto base = line_cloud({-1, 0}, {4, 0}, {{-1, 0}, {1, 0}, {3, 0}});
  REQUIRE(base.resolution == doctest::Approx(1.0));
  try {
    quad_fill({0, 1}, base, make_patch(0.0, 1.0, 2.0, 3.0), 32);
    FAIL("expected ResolutionTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolutionTooCoarse);
  }
}

TEST_CASE("reach examples") {
  const Triangle<double> seed{{0, -1}, {0, 1}, {1, 0}};
  const auto direct = reach({0, 0}, seed, 1e-3);
  CHECK(direct.derivation.size() == 4);
  CHECK(direct.error == 0.0);

  const auto far = reach({10, 10}, seed, 1e-3);
  CHECK(verify(far.derivation, kDefaultFloatTolerance).pass);
  CHECK(far.error <= 1e-3);
  CHECK(distance(far.derivation.point(far.target_index), {10, 10}) <= 1e-3);
  CHECK(far.derivation.step(0).point == seed.a);

  try {
    reach({10, 10}, seed, 0.0);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  try {
    reach({1, 1}, Triangle<double>{{0, 0}, {1, 1}, {2, 2}}, 1e-3);
    FAIL("expected CollinearSeed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CollinearSeed);
  }
}

TEST_CASE("reach derivations are sound") {
  std::mt19937_64 rng(55);
  int done = 0;
  while (done < 10) {
    const Triangle<double> seed{oracle::random_point(rng, 5), oracle::random_point(rng, 5), oracle::random_point(rng, 5)};
    if (std::fabs(cross(seed.b - seed.a, seed.c - seed.a)) < 1e-2) continue;
    const Point2 target = oracle::random_point(rng, 10);
    const auto r = reach(target, seed, 1e-3);
    const auto& d = r.derivation;
    int seeds = 0;
    for (std::size_t n = 0; n < d.size(); ++n) {
      const auto& s = d.step(n);
      if (s.kind == StepKind::Seed) {
        ++seeds;
        continue;
      }
      for (auto p : s.parents) REQUIRE(p < n);
      const ExactPoint c = oracle::circumcenter(to_exact(d.point(s.parents[0])), to_exact(d.point(s.parents[1])),
                                                to_exact(d.point(s.parents[2])));
      const double off = std::sqrt(distance_sq(c, to_exact(s.point)).get_d());
      REQUIRE(off <= 1e-9 * std::max(1.0, norm(to_float(c))));
    }
    REQUIRE(seeds == 3);
    REQUIRE(verify(d, kDefaultFloatTolerance).pass);
    REQUIRE(distance(d.point(r.target_index), target) <= 1e-3);
    ++done;
  }
}
