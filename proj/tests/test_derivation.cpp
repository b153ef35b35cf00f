#include <doctest.h>

#include <random>

#include "ccset/derivation.hpp"
#include "oracles.hpp"

using namespace ccset;
using Q = Rational;

namespace {

template <class T>
BasicDerivation<T> random_derivation(std::mt19937_64& rng, std::size_t seeds, std::size_t centers) {
  BasicDerivation<T> d(static_cast<double>(rng() % 1000) * 1e-12);
  for (std::size_t i = 0; i < seeds; ++i) {
    if constexpr (is_exact_v<T>) {
      d.add_seed(oracle::random_exact_point(rng));
    } else {
      d.add_seed(oracle::random_point(rng));
    }
  }
  while (d.size() < seeds + centers) {
    const std::size_t n = d.size();
    const std::size_t i = rng() % n, j = rng() % n, k = rng() % n;
    if (orientation(d.point(i), d.point(j), d.point(k)) == 0) continue;
    d.add_center(i, j, k);
  }
  return d;
}

}  // namespace

TEST_CASE("verify examples") {
  Derivation d(1e-9);
  d.add_seed({0, 0});
  d.add_seed({2, 0});
  d.add_seed({0, 2});
  d.add_center_unchecked(0, 1, 2, {1, 1});
  CHECK(verify(d, 1e-9).pass);

  Derivation bad(1e-9);
  bad.add_seed({0, 0});
  bad.add_seed({2, 0});
  bad.add_seed({0, 2});
  bad.add_center_unchecked(0, 1, 2, {1, 1.001});
  const auto r = verify(bad, 1e-9);
  CHECK_FALSE(r.pass);
  CHECK(r.step == 3);
  CHECK(r.residual == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("verify catches collinear ancestors and exact mismatches") {
  ExactDerivation d;
  d.add_seed({Q(0), Q(0)});
  d.add_seed({Q(1), Q(0)});
  d.add_seed({Q(2), Q(0)});
  d.add_center_unchecked(0, 1, 2, {Q(1), Q(5)});
  CHECK_FALSE(verify(d, 0).pass);

  ExactDerivation e;
  e.add_seed({Q(0), Q(1)});
  e.add_seed({Q(0), Q(-1)});
  e.add_seed({Q(1), Q(0)});
  e.add_center_unchecked(0, 1, 2, {Q(0), oracle::ratio(1, 1000000000)});
  CHECK_FALSE(verify(e, 0).pass);
  e = ExactDerivation();
  e.add_seed({Q(0), Q(1)});
  e.add_seed({Q(0), Q(-1)});
  e.add_seed({Q(1), Q(0)});
  e.add_center(0, 1, 2);
  CHECK(verify(e, 0).pass);
}

TEST_CASE("exact spiral orbit verifies with zero tolerance") {
  ExactDerivation d;
  d.add_seed({Q(0), Q(-1)});
  d.add_seed({Q(0), Q(1)});
  d.add_seed({Q(1), Q(0)});
  for (int n = 3; n < 40; ++n) d.add_center(n - 1, n - 2, n - 3);
  const auto r = verify(d, 0);
  CHECK(r.pass);
  CHECK(d.point(3) == ExactPoint{Q(0), Q(0)});
  CHECK(d.point(6) == ExactPoint{oracle::ratio(1, 4), oracle::ratio(1, 4)});
}

TEST_CASE("serialization examples") {
  Derivation empty(1e-9);
  const std::string text = serialize(empty);
  CHECK(text == "ccset-derivation v1 tower=float64 tol=1e-09\n");
  const auto back = parse_derivation(text);
  REQUIRE(std::holds_alternative<Derivation>(back));
  CHECK(std::get<Derivation>(back).empty());

  ExactDerivation one;
  one.add_seed({oracle::ratio(1, 3), oracle::ratio(-7, 2)});
  const auto parsed = parse_derivation(serialize(one));
  REQUIRE(std::holds_alternative<ExactDerivation>(parsed));
  CHECK(std::get<ExactDerivation>(parsed) == one);

  try {
    parse_derivation("ccset-derivation v1 tower=float64 tol=0\nS 0 0\nS 1 0\nC 0 1 3 0 0\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("DAG") != std::string::npos);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_derivation(""), Error);
  CHECK_THROWS_AS(parse_derivation("ccset-derivation v2 tower=float64 tol=0\n"), Error);
  CHECK_THROWS_AS(parse_derivation("ccset-derivation v1 tower=float64 tol=0\nS 1\n"), Error);
  CHECK_THROWS_AS(parse_derivation("ccset-derivation v1 tower=rational tol=0\nS 0.5 1\n"), Error);

  const auto commented = parse_derivation("# note\nccset-derivation v1 tower=rational tol=0\n\n# x\nS 1/2 3\n");
  CHECK(std::get<ExactDerivation>(commented).size() == 1);
}

TEST_CASE("parse inverts serialize on random derivations") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    const auto f = random_derivation<double>(rng, 3 + rng() % 3, rng() % 10);
    const auto pf = parse_derivation(serialize(f));
    REQUIRE(std::holds_alternative<Derivation>(pf));
    REQUIRE(std::get<Derivation>(pf) == f);

    const auto e = random_derivation<Q>(rng, 3 + rng() % 3, rng() % 4);
    const auto pe = parse_derivation(serialize(e));
    REQUIRE(std::holds_alternative<ExactDerivation>(pe));
    REQUIRE(std::get<ExactDerivation>(pe) == e);
    REQUIRE(verify(std::get<ExactDerivation>(pe), 0).pass);
  }
}

TEST_CASE("float derivations from the builders verify") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const auto d = random_derivation<double>(rng, 3, 30);
    REQUIRE(verify(d, kDefaultFloatTolerance).pass);
  }
}

TEST_CASE("extract_ancestors keeps seeds and the target's ancestry") {
  Derivation d(1e-9);
  d.add_seed({0, 1});
  d.add_seed({0, -1});
  d.add_seed({3, 0});
  d.add_center(0, 1, 2);          // 3
  d.add_center(1, 2, 3);                 // 4, not an ancestor
  const auto t = d.add_center(0, 2, 3);  // 5
  const auto [pruned, idx] = extract_ancestors(d, t);
  CHECK(pruned.size() == 5);
  CHECK(idx == 4);
  CHECK(pruned.point(idx) == d.point(t));
  CHECK(verify(pruned, 1e-9).pass);
}
