#pragma once

// Derivation certificates: an append-only list of points where every entry
// is a seed or the circumcenter of three strictly earlier entries. A
// derivation is a finite witness that its last point lies in the circle-center
// closure of its seeds.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ccset/geometry.hpp"

namespace ccset {

enum class StepKind { Seed, Center };

template <class T>
struct DerivationStep {
  StepKind kind = StepKind::Seed;
  std::array<std::size_t, 3> parents{};
  Point<T> point;

  friend bool operator==(const DerivationStep& a, const DerivationStep& b) {
    return a.kind == b.kind && a.parents == b.parents && a.point == b.point;
  }
};

template <class T>
class BasicDerivation {
 public:
  BasicDerivation() = default;
  explicit BasicDerivation(double tolerance) : tolerance_(tolerance) {}

  std::size_t add_seed(const Point<T>& p) {
    steps_.push_back({StepKind::Seed, {}, p});
    return steps_.size() - 1;
  }

  /// Appends C(i, j, k) computed with the geometry kernel.
  std::size_t add_center(std::size_t i, std::size_t j, std::size_t k) {
    check_parents(i, j, k);
    const Point<T> c = circumcenter(steps_[i].point, steps_[j].point, steps_[k].point);
    steps_.push_back({StepKind::Center, {i, j, k}, c});
    return steps_.size() - 1;
  }

  /// Appends a center step with a caller-supplied point (parsers, tests).
  std::size_t add_center_unchecked(std::size_t i, std::size_t j, std::size_t k, const Point<T>& stored) {
    check_parents(i, j, k);
    steps_.push_back({StepKind::Center, {i, j, k}, stored});
    return steps_.size() - 1;
  }

  const Point<T>& point(std::size_t i) const { return steps_.at(i).point; }
  const DerivationStep<T>& step(std::size_t i) const { return steps_.at(i); }
  const std::vector<DerivationStep<T>>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  double tolerance() const { return tolerance_; }
  void set_tolerance(double tol) { tolerance_ = tol; }

  friend bool operator==(const BasicDerivation& a, const BasicDerivation& b) {
    return a.tolerance_ == b.tolerance_ && a.steps_ == b.steps_;
  }

 private:
  void check_parents(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t n = steps_.size();
    if (i >= n || j >= n || k >= n) throw Error(ErrorKind::InvalidArgument, "center step cites a later step");
  }

  std::vector<DerivationStep<T>> steps_;
  double tolerance_ = 0.0;
};

using Derivation = BasicDerivation<double>;
using ExactDerivation = BasicDerivation<Rational>;
using AnyDerivation = std::variant<Derivation, ExactDerivation>;

/// Default stored tolerance for float derivations.
inline constexpr double kDefaultFloatTolerance = 1e-9;

struct VerifyReport {
  bool pass = true;
  std::size_t step = 0;
  double residual = 0.0;
  std::string reason;
};

/// Recomputes every center step on a code path independent of the builders
/// and compares it with the stored point. A step passes when
/// |stored - recomputed| <= tol * max(1, |recomputed|); tol = 0 on the
/// rational tower demands exact equality. Reports the first failure.
template <class T>
VerifyReport verify(const BasicDerivation<T>& d, double tol);

VerifyReport verify(const AnyDerivation& d, double tol);

template <class T>
std::string serialize(const BasicDerivation<T>& d);
std::string serialize(const AnyDerivation& d);

/// Parses the line format; the header decides the tower. Throws ParseError
/// naming the line.
AnyDerivation parse_derivation(std::string_view text);

/// Parses a float-tower derivation (rational files are converted).
Derivation parse_float_derivation(std::string_view text);

/// Keeps every seed plus the ancestors of `target`, renumbered in order.
/// Returns the new derivation and the new index of `target`.
template <class T>
std::pair<BasicDerivation<T>, std::size_t> extract_ancestors(const BasicDerivation<T>& d, std::size_t target);

}  // namespace ccset
