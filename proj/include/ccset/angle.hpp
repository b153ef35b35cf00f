#pragma once

// Doubling-map dynamics of circle centers over the fixed base (0,1), (0,-1).
// An angle alpha is carried as the fraction alpha/pi in [0, 1); taking a
// circle center doubles the angle, i.e. shifts the binary expansion.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccset/geometry.hpp"

namespace ccset {

/// p/q in lowest terms with 0 <= p < q.
struct RationalFraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const RationalFraction&, const RationalFraction&) = default;
};

/// Source of the bits b1 b2 b3 ... of a number in [0, 1), indexed from 0.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual bool bit(std::uint64_t index) const = 0;
  /// Number of stored bits for a finite expansion (all later bits are 0).
  virtual std::optional<std::uint64_t> length() const = 0;
  /// Index of the last 1 bit of a finite expansion; nullopt if there is none
  /// or the source is unbounded.
  virtual std::optional<std::uint64_t> last_one() const = 0;
};

/// Finite expansion held in memory.
class VectorBits final : public BitSource {
 public:
  explicit VectorBits(std::vector<bool> bits);
  bool bit(std::uint64_t index) const override;
  std::optional<std::uint64_t> length() const override { return bits_.size(); }
  std::optional<std::uint64_t> last_one() const override { return last_one_; }

 private:
  std::vector<bool> bits_;
  std::optional<std::uint64_t> last_one_;
};

/// Unbounded expansion produced by a function of the bit index.
class GeneratedBits final : public BitSource {
 public:
  explicit GeneratedBits(std::function<bool(std::uint64_t)> generator) : generator_(std::move(generator)) {}
  bool bit(std::uint64_t index) const override { return generator_(index); }
  std::optional<std::uint64_t> length() const override { return std::nullopt; }
  std::optional<std::uint64_t> last_one() const override { return std::nullopt; }

 private:
  std::function<bool(std::uint64_t)> generator_;
};

/// A shared bit source viewed from an offset; shifting only moves the offset.
struct BitStream {
  std::shared_ptr<const BitSource> source;
  std::uint64_t offset = 0;

  bool bit(std::uint64_t k) const { return source->bit(offset + k); }
  /// The next 64 bits, most significant first.
  std::uint64_t window() const;
  bool finite() const { return source->length().has_value(); }
};

class AngleFraction {
 public:
  /// p/q reduced modulo 1 and to lowest terms. q must be in [1, 2^62].
  static AngleFraction rational(std::uint64_t num, std::uint64_t den);
  static AngleFraction bits(std::shared_ptr<const BitSource> source, std::uint64_t offset = 0);
  /// Parses "p/q".
  static AngleFraction parse(const std::string& text);

  bool is_rational() const { return std::holds_alternative<RationalFraction>(rep_); }
  const RationalFraction& as_rational() const { return std::get<RationalFraction>(rep_); }
  const BitStream& as_bits() const { return std::get<BitStream>(rep_); }

  /// alpha/pi as a double (64-bit look-ahead for streams).
  double value() const;
  /// Exact tests where decidable: always for rationals, for finite streams
  /// via the position of the last 1 bit. Unbounded streams answer false.
  bool is_zero() const;
  bool is_half() const;

  std::string to_string() const;

  friend bool operator==(const AngleFraction& a, const AngleFraction& b);

 private:
  explicit AngleFraction(RationalFraction r) : rep_(r) {}
  explicit AngleFraction(BitStream s) : rep_(std::move(s)) {}

  std::variant<RationalFraction, BitStream> rep_;

  friend AngleFraction shift(const AngleFraction& a);
};

/// cot(pi * t) for t in (0, 1), keeping the argument in (0, pi/2].
double cot_pi(double t);

struct CotPoint {
  Point2 point;
  /// The angle is pi/2: the point is the origin, collinear with the base.
  bool origin = false;
};

/// (cot alpha, 0). Throws UndefinedCotangent when alpha/pi = 0.
CotPoint cot_point(const AngleFraction& a);

/// The doubling map 2x mod 1.
AngleFraction shift(const AngleFraction& a);

struct Terminates {
  /// First index j whose Q_j cannot be formed.
  std::uint64_t step;
};
struct EventuallyPeriodic {
  std::uint64_t preperiod;
  std::uint64_t period;
};
struct Undetermined {
  std::uint64_t horizon;
};

struct OrbitReport {
  std::variant<Terminates, EventuallyPeriodic, Undetermined> kind;
  /// Q_1, Q_2, ... as far as they were computed.
  std::vector<Point2> points;
  /// alpha_j / pi for each computed Q_j.
  std::vector<AngleFraction> angles;
};

/// Iterates Q_j = C(M, N, Q_{j-1}) in angle space for up to max_steps points.
/// Rationals are classified exactly from the 2-adic valuation and the order
/// of 2 modulo the odd part of the denominator.
OrbitReport orbit(const AngleFraction& a, std::uint64_t max_steps);

/// |C((0,1), (0,-1), Q(a)) - Q(shift(a))| computed with the kernel.
double verify_cotangent_relation(const AngleFraction& a);

/// A rational whose expansion has preperiod exactly L and period exactly P.
/// The default repeating block is 1 0^(P-1); a custom primitive block may be
/// given as a string of '0'/'1'.
AngleFraction synthesize_alpha(std::uint64_t preperiod, std::uint64_t period,
                               const std::optional<std::string>& block = std::nullopt);

/// Bit n (0-based) of the Thue-Morse constant: parity of popcount(n).
bool thue_morse_bit(std::uint64_t n);

/// The first `count` bits of the Thue-Morse constant, built by appending
/// complements: 0, 01, 0110, 01101001, ...
std::vector<bool> thue_morse_prefix(std::uint64_t count);

/// The Thue-Morse constant truncated to `count` bits.
AngleFraction thue_morse(std::uint64_t count);

struct CoverageHistogram {
  std::vector<std::uint64_t> counts;
  double empty_fraction = 0.0;
};

/// Runs `samples` random orbits of `steps` points each and bins the points
/// by arccot(x) into `bins` uniform bins over (0, pi). Each sample draws its
/// bits from a generator seeded by (rng_seed, sample index).
CoverageHistogram coverage_experiment(std::uint64_t samples, std::uint64_t steps, std::uint64_t bins,
                                      std::uint64_t rng_seed);

}  // namespace ccset
