#include <doctest.h>

#include <numbers>
#include <random>

#include "ccset/spiral.hpp"
#include "oracles.hpp"

using namespace ccset;
using Q = Rational;

namespace {

constexpr double pi = std::numbers::pi;

// Isosceles start with apex angle beta at (0, cot(beta/2)) over the base (-1,0), (1,0).
SpiralState<double> start(double beta, std::size_t count) {
  return spiral_orbit(Point2{-1, 0}, Point2{1, 0}, Point2{0, 1 / std::tan(beta / 2)}, count);
}

Point2 on_circle(double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace

TEST_CASE("lambda_of examples and the closed form") {
  CHECK(lambda_of(pi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::fabs(lambda_of(2 * pi / 13) - 1.076) <= 1e-3);
  CHECK(std::fabs(lambda_of(2 * pi / 11) - 0.925) <= 1e-3);
  CHECK(std::fabs(lambda_of(pi / 6) - 1) <= 1e-12);
  CHECK(std::fabs(lambda_of(5 * pi / 6) - 1) <= 1e-12);
  for (int i = 1; i < 1000; ++i) {
    const double beta = pi * i / 1000;
    REQUIRE(lambda_of(beta) == doctest::Approx(oracle::lambda(beta)).epsilon(1e-12));
    REQUIRE(lambda_of(beta) > 0);
    if (beta > pi / 6 + 1e-9 && beta < 5 * pi / 6 - 1e-9) REQUIRE(lambda_of(beta) < 1);
    if (beta < pi / 6 - 1e-9 || beta > 5 * pi / 6 + 1e-9) REQUIRE(lambda_of(beta) > 1);
  }
  CHECK_THROWS_AS(lambda_of(0), Error);
  CHECK_THROWS_AS(lambda_of(pi), Error);
}

TEST_CASE("isoscelize examples") {
  const auto a = isoscelize(on_circle(0), on_circle(2 * pi / 7), on_circle(4 * pi / 7));
  CHECK(a.doublings == 0);
  CHECK(a.apex_angle == doctest::Approx(2 * pi / 7));
  CHECK(a.triangle.a == on_circle(0));
  CHECK(a.triangle.b == on_circle(2 * pi / 7));

  const auto b = isoscelize(on_circle(0), on_circle(pi / 16), on_circle(pi));
  CHECK(b.doublings == 2);
  CHECK(b.apex_angle == doctest::Approx(pi / 4));

  const auto c = isoscelize(on_circle(0), on_circle(2 * pi / 3), on_circle(4 * pi / 3));
  CHECK(c.doublings == 0);
  CHECK(c.apex_angle == doctest::Approx(2 * pi / 3));

  CHECK_THROWS_AS(isoscelize({0, 0}, {1, 1}, {2, 2}), Error);
}

TEST_CASE("isoscelize output is admissible and derivable") {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 1000) {
    const Point2 p = oracle::random_point(rng), q = oracle::random_point(rng), r = oracle::random_point(rng);
    if (orientation(p, q, r) == 0) continue;
    const auto res = isoscelize(p, q, r);
    REQUIRE(res.apex_angle > pi / 6);
    REQUIRE(res.apex_angle < 5 * pi / 6);
    const auto& t = res.triangle;
    REQUIRE(std::fabs(distance(t.c, t.a) - distance(t.c, t.b)) <= 1e-9 * distance(t.c, t.a));
    REQUIRE(vertex_angle(t.a, t.b, t.c) == doctest::Approx(res.apex_angle));
    REQUIRE(verify(res.derivation, kDefaultFloatTolerance).pass);
    REQUIRE(res.derivation.point(res.indices[0]) == t.a);
    REQUIRE(res.derivation.point(res.indices[1]) == t.b);
    REQUIRE(res.derivation.point(res.indices[2]) == t.c);
    REQUIRE(res.derivation.point(0) == p);
    ++done;
  }
}

TEST_CASE("exact spiral from (0,-1), (0,1), (1,0)") {
  const auto s = spiral_orbit(ExactPoint{Q(0), Q(-1)}, ExactPoint{Q(0), Q(1)}, ExactPoint{Q(1), Q(0)}, 7);
  CHECK(s.points[3] == ExactPoint{Q(0), Q(0)});
  CHECK(s.points[4] == ExactPoint{oracle::ratio(1, 2), oracle::ratio(1, 2)});
  CHECK(s.points[5] == ExactPoint{oracle::ratio(1, 2), Q(0)});
  CHECK(s.points[6] == ExactPoint{oracle::ratio(1, 4), oracle::ratio(1, 4)});
  CHECK(s.f.scale_sq() == oracle::ratio(1, 4));
  CHECK(s.f.a == 0);
  CHECK(s.f.b > 0);
  CHECK(s.p_infinity == ExactPoint{oracle::ratio(2, 5), oracle::ratio(1, 5)});
  CHECK(s.lambda == doctest::Approx(0.5));
  CHECK(s.lambda_residual <= 1e-9);
  // Independent fixed point by iterating f.
  Point2 p{3, 3};
  const Similarity<double> f{s.f.a.get_d(), s.f.b.get_d(), s.f.tx.get_d(), s.f.ty.get_d()};
  for (int i = 0; i < 200; ++i) p = f(p);
  CHECK(distance(p, {0.4, 0.2}) < 1e-12);
  CHECK_THROWS_AS(spiral_orbit(ExactPoint{Q(0), Q(-1)}, ExactPoint{Q(0), Q(1)}, ExactPoint{Q(1), Q(1)}, 7), Error);
}

TEST_CASE("figure regimes: contracting and expanding spirals") {
  for (double beta : {2 * pi / 11, 2 * pi / 13}) {
    const auto s = start(beta, 40);
    CHECK(s.lambda == doctest::Approx(oracle::lambda(beta)).epsilon(1e-9));
    CHECK(s.chain_residual <= 1e-8);
    for (std::size_t n = 0; n + 2 < s.points.size(); ++n) {
      const double ratio = distance(s.points[n + 2], s.p_infinity) / distance(s.points[n], s.p_infinity);
      REQUIRE(ratio == doctest::Approx(oracle::lambda(beta)).epsilon(1e-7));
    }
  }
  const auto shrink = start(2 * pi / 11, 40);
  CHECK(distance(shrink.points[39], shrink.p_infinity) < distance(shrink.points[1], shrink.p_infinity));
  const auto grow = start(2 * pi / 13, 40);
  CHECK(distance(grow.points[39], grow.p_infinity) > distance(grow.points[1], grow.p_infinity));
}

TEST_CASE("closed form of the limit point") {
  CHECK(p_infinity_formula(Q(1)) == ExactPoint{oracle::ratio(8, 20), oracle::ratio(4, 20)});
  CHECK(p_infinity_formula(Q(-1)) == ExactPoint{oracle::ratio(-2, 5), oracle::ratio(1, 5)});
  const Point2 far = p_infinity_formula(1e3);
  CHECK(std::fabs(far.y - 3) < 1e-3);
  // Leading terms: x-coordinate ~ 12 / x.
  CHECK(far.x == doctest::Approx(12e-3).epsilon(1e-3));
  CHECK_THROWS_AS(p_infinity_formula(Q(0)), Error);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Q x = oracle::random_rational(rng, 5, 50);
    if (x == 0) continue;
    const ExactPoint p1{Q(0), Q(-1)}, p2{Q(0), Q(1)}, p3{x, Q(0)};
    const ExactPoint p4 = oracle::circumcenter(p3, p2, p1);
    REQUIRE(p_infinity_formula(x) == fixed_point(similarity_from_pairs(p1, p2, p3, p4)));
  }
}

TEST_CASE("orderly queues") {
  const auto s = spiral_orbit(ExactPoint{Q(0), Q(-1)}, ExactPoint{Q(0), Q(1)}, ExactPoint{Q(1), Q(0)}, 16);
  const auto r = orderly_queues_check(s, 1e-9);
  CHECK(r.pass);
  CHECK(r.perpendicular_13 <= 1e-9);
  CHECK(r.perpendicular_24 <= 1e-9);

  const auto c = start(2 * pi / 5, 20);
  const auto q = orderly_queues_check(c, 1e-8);
  CHECK(q.pass);
  for (const auto& line : q.lines) {
    for (std::size_t k = 1; k < line.distances.size(); ++k) REQUIRE(line.distances[k] < line.distances[k - 1]);
  }

  try {
    orderly_queues_check(start(2 * pi / 5, 11), 1e-8);
    FAIL("expected TooFewPoints");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewPoints);
  }
}

TEST_CASE("step-two map carries each point two places along") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(pi / 6 + 0.01, 5 * pi / 6 - 0.01);
  for (int t = 0; t < 200; ++t) {
    const auto s = start(u(rng), 30);
    for (std::size_t n = 0; n + 2 < s.points.size(); ++n) {
      const Point2 img = s.f(s.points[n]);
      REQUIRE(distance(img, s.points[n + 2]) <= 1e-9 * (1 + norm(s.points[n + 2])));
    }
    REQUIRE(std::fabs(std::fabs(s.f.angle()) - pi / 2) <= 1e-9);
    REQUIRE(s.lambda_residual <= 1e-9);
  }
}

TEST_CASE("similarity relation on random isosceles triangles") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(1e-3, pi - 1e-3);
  int done = 0;
  while (done < 1000) {
    const double beta = u(rng);
    if (std::fabs(beta - pi / 2) < 1e-3 || std::fabs(beta - pi / 3) < 1e-3 || std::fabs(beta - 2 * pi / 3) < 1e-3) continue;
    const Point2 d{-1, 0}, e{1, 0}, f{0, 1 / std::tan(beta / 2)};
    const auto r = similarity_relation_residuals(d, e, f);
    const Point2 g = oracle::circumcenter(d, e, f);
    const Point2 h = oracle::circumcenter(e, f, g);
    const double lam = oracle::lambda(beta);
    REQUIRE(std::fabs(distance(f, g) / distance(d, e) - lam) <= 1e-8 * lam);
    REQUIRE(std::fabs(distance(g, h) / distance(e, f) - lam) <= 1e-8 * lam);
    REQUIRE(r.ratio <= 1e-8);
    REQUIRE(r.axis_cos <= 1e-8);
    ++done;
  }
}

TEST_CASE("two quarter turns make a half turn about the limit point") {
  std::mt19937_64 rng(45);
  const auto s = start(2 * pi / 7, 8);
  const auto ff = compose(s.f, s.f);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p = oracle::random_point(rng);
    const Point2 q = ff(p);
    const Point2 u = p - s.p_infinity, v = q - s.p_infinity;
    REQUIRE(std::fabs(cross(u, v)) <= 1e-9 * std::max(1.0, norm(u) * norm(v)));
    REQUIRE(dot(u, v) <= 0);
  }
}
