#include "ccset/angle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ccset/number_theory.hpp"

namespace ccset {

namespace {

constexpr std::uint64_t kMaxDenominator = std::uint64_t{1} << 62;

double window_value(std::uint64_t window) { return static_cast<double>(window >> 11) * 0x1p-53; }

const Point2 kBaseTop{0.0, 1.0};
const Point2 kBaseBottom{0.0, -1.0};

}  // namespace

VectorBits::VectorBits(std::vector<bool> bits) : bits_(std::move(bits)) {
  for (std::uint64_t i = bits_.size(); i > 0; --i) {
    if (bits_[i - 1]) {
      last_one_ = i - 1;
      break;
    }
  }
}

bool VectorBits::bit(std::uint64_t index) const { return index < bits_.size() && bits_[index]; }

std::uint64_t BitStream::window() const {
  std::uint64_t w = 0;
  for (std::uint64_t k = 0; k < 64; ++k) w = (w << 1) | static_cast<std::uint64_t>(bit(k));
  return w;
}

AngleFraction AngleFraction::rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || den > kMaxDenominator) {
    throw Error(ErrorKind::InvalidArgument, "denominator must be in [1, 2^62]");
  }
  num %= den;
  const std::uint64_t g = std::gcd(num, den);
  if (num == 0) return AngleFraction(RationalFraction{0, 1});
  return AngleFraction(RationalFraction{num / g, den / g});
}

AngleFraction AngleFraction::bits(std::shared_ptr<const BitSource> source, std::uint64_t offset) {
  if (!source) throw Error(ErrorKind::InvalidArgument, "null bit source");
  return AngleFraction(BitStream{std::move(source), offset});
}

AngleFraction AngleFraction::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const auto n = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return rational(n, 1);
    }
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    const auto n = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const auto d = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (a.find('-') != std::string::npos || b.find('-') != std::string::npos) throw std::invalid_argument(text);
    return rational(n, d);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "expected a fraction p/q with non-negative integers, got '" + text + "'");
  }
}

double AngleFraction::value() const {
  if (is_rational()) {
    const auto& r = as_rational();
    return static_cast<double>(r.num) / static_cast<double>(r.den);
  }
  return window_value(as_bits().window());
}

bool AngleFraction::is_zero() const {
  if (is_rational()) return as_rational().num == 0;
  const auto& s = as_bits();
  if (!s.finite()) return false;
  const auto last = s.source->last_one();
  return !last || s.offset > *last;
}

bool AngleFraction::is_half() const {
  if (is_rational()) return as_rational() == RationalFraction{1, 2};
  const auto& s = as_bits();
  if (!s.finite()) return false;
  const auto last = s.source->last_one();
  return last && s.offset == *last;
}

std::string AngleFraction::to_string() const {
  if (is_rational()) {
    const auto& r = as_rational();
    return std::to_string(r.num) + "/" + std::to_string(r.den);
  }
  std::string out = "0.";
  for (std::uint64_t k = 0; k < 24; ++k) out.push_back(as_bits().bit(k) ? '1' : '0');
  out += "...";
  return out;
}

bool operator==(const AngleFraction& a, const AngleFraction& b) {
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.as_rational() == b.as_rational();
  return a.as_bits().source == b.as_bits().source && a.as_bits().offset == b.as_bits().offset;
}

double cot_pi(double t) {
  if (t > 0.5) return -cot_pi(1.0 - t);
  const double angle = std::numbers::pi * t;
  return std::cos(angle) / std::sin(angle);
}

CotPoint cot_point(const AngleFraction& a) {
  if (a.is_zero()) throw Error(ErrorKind::UndefinedCotangent, "cot is undefined at a multiple of pi");
  if (a.is_half()) return {{0.0, 0.0}, true};
  const double v = a.value();
  if (v == 0.0) throw Error(ErrorKind::UndefinedCotangent, "look-ahead window of the bit stream is zero");
  return {{cot_pi(v), 0.0}, false};
}

AngleFraction shift(const AngleFraction& a) {
  if (a.is_rational()) {
    const auto& r = a.as_rational();
    // 2p mod q stays below 2^63 because q <= 2^62.
    return AngleFraction::rational((2 * r.num) % r.den, r.den);
  }
  BitStream s = a.as_bits();
  ++s.offset;
  return AngleFraction(std::move(s));
}

OrbitReport orbit(const AngleFraction& a, std::uint64_t max_steps) {
  if (max_steps < 1) throw Error(ErrorKind::InvalidArgument, "orbit needs at least one step");
  OrbitReport report{Undetermined{max_steps}, {}, {}};

  if (a.is_rational()) {
    const auto& r = a.as_rational();
    if (r.num == 0) {
      report.kind = Terminates{1};
      return report;
    }
    const auto [k, m] = split_two_adic(r.den);
    std::uint64_t defined = max_steps;
    if (m == 1) {
      // Q_k is the origin and Q_{k+1} cannot be formed.
      report.kind = Terminates{static_cast<std::uint64_t>(k) + 1};
      defined = std::min<std::uint64_t>(max_steps, k);
    } else {
      report.kind = EventuallyPeriodic{static_cast<std::uint64_t>(k), multiplicative_order(2, m)};
    }
    AngleFraction current = a;
    for (std::uint64_t j = 0; j < defined; ++j) {
      report.points.push_back(cot_point(current).point);
      report.angles.push_back(current);
      current = shift(current);
    }
    return report;
  }

  AngleFraction current = a;
  for (std::uint64_t j = 1; j <= max_steps; ++j) {
    if (current.is_zero()) {
      report.kind = Terminates{j};
      return report;
    }
    if (current.value() == 0.0) {
      // Unbounded stream whose look-ahead is all zeros: cot cannot be taken.
      report.kind = Undetermined{j - 1};
      return report;
    }
    report.points.push_back(cot_point(current).point);
    report.angles.push_back(current);
    current = shift(current);
  }
  if (current.is_zero()) report.kind = Terminates{max_steps + 1};
  return report;
}

double verify_cotangent_relation(const AngleFraction& a) {
  const AngleFraction next = shift(a);
  if (a.is_zero() || a.is_half() || next.is_zero()) {
    throw Error(ErrorKind::UndefinedCotangent, "the circle center of this configuration is undefined");
  }
  const Point2 q = cot_point(a).point;
  const Point2 expected = cot_point(next).point;
  try {
    return distance(circumcenter(kBaseTop, kBaseBottom, q), expected);
  } catch (const Error&) {
    throw Error(ErrorKind::UndefinedCotangent, "Q lies on the line of the base points");
  }
}

namespace {

bool is_primitive(const std::string& block) {
  const std::size_t n = block.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < n && periodic; ++i) periodic = block[i] == block[(i + d) % n];
    if (periodic) return false;
  }
  return true;
}

}  // namespace

AngleFraction synthesize_alpha(std::uint64_t preperiod, std::uint64_t period, const std::optional<std::string>& block) {
  if (period == 1) {
    throw Error(ErrorKind::UnsupportedPeriodOne, "period 1 needs 2a = a mod pi, where cot is undefined");
  }
  if (period == 0) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  if (preperiod + period > 62) throw Error(ErrorKind::InvalidArgument, "preperiod + period must be at most 62");

  std::string bits = block.value_or("1" + std::string(period - 1, '0'));
  if (bits.size() != period || bits.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorKind::InvalidBlock, "block must be " + std::to_string(period) + " binary digits");
  }
  if (!is_primitive(bits)) throw Error(ErrorKind::InvalidBlock, "block '" + bits + "' is a repetition of a shorter block");

  // Preperiod bits all differ from the last block bit, so the preperiod
  // cannot be shortened by rotating the block.
  const bool pre_bit = bits.back() == '0';
  const std::uint64_t cycle = (std::uint64_t{1} << period) - 1;
  const std::uint64_t prefix = pre_bit ? (std::uint64_t{1} << preperiod) - 1 : 0;
  std::uint64_t repeat = 0;
  for (char c : bits) repeat = (repeat << 1) | static_cast<std::uint64_t>(c == '1');

  const std::uint64_t den = (std::uint64_t{1} << preperiod) * cycle;
  const std::uint64_t num = prefix * cycle + repeat;
  AngleFraction result = AngleFraction::rational(num, den);

  const OrbitReport check = orbit(result, 1);
  const auto* periodic = std::get_if<EventuallyPeriodic>(&check.kind);
  if (!periodic || periodic->preperiod != preperiod || periodic->period != period) {
    throw std::logic_error("synthesized fraction " + result.to_string() + " failed its orbit check");
  }
  return result;
}

bool thue_morse_bit(std::uint64_t n) { return std::popcount(n) % 2 == 1; }

std::vector<bool> thue_morse_prefix(std::uint64_t count) {
  std::vector<bool> bits;
  if (count == 0) return bits;
  bits.reserve(std::bit_ceil(count));
  bits.push_back(false);
  while (bits.size() < count) {
    const std::size_t n = bits.size();
    for (std::size_t i = 0; i < n; ++i) bits.push_back(!bits[i]);
  }
  bits.resize(count);
  return bits;
}

AngleFraction thue_morse(std::uint64_t count) {
  return AngleFraction::bits(std::make_shared<VectorBits>(thue_morse_prefix(count)));
}

CoverageHistogram coverage_experiment(std::uint64_t samples, std::uint64_t steps, std::uint64_t bins,
                                      std::uint64_t rng_seed) {
  if (samples < 1 || steps < 1 || bins < 1) {
    throw Error(ErrorKind::InvalidArgument, "samples, steps and bins must all be at least 1");
  }
  CoverageHistogram hist;
  hist.counts.assign(bins, 0);

  const std::uint64_t words = (steps + 64) / 64 + 1;
  std::vector<std::uint64_t> stream(words);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
    std::mt19937_64 gen(seq);
    for (auto& w : stream) w = gen();

    for (std::uint64_t j = 0; j < steps; ++j) {
      // Bits j .. j+63 of the stream, most significant first.
      const std::uint64_t word = j / 64;
      const unsigned bit = j % 64;
      const std::uint64_t window = bit == 0 ? stream[word] : (stream[word] << bit) | (stream[word + 1] >> (64 - bit));
      const double v = window_value(window);
      if (v == 0.0) continue;
      const double x = cot_pi(v);
      const double theta = std::atan2(1.0, x);
      auto bin = static_cast<std::uint64_t>(theta / std::numbers::pi * static_cast<double>(bins));
      if (bin >= bins) bin = bins - 1;
      ++hist.counts[bin];
    }
  }
  std::uint64_t empty = 0;
  for (auto c : hist.counts) empty += (c == 0);
  hist.empty_fraction = static_cast<double>(empty) / static_cast<double>(bins);
  return hist;
}

}  // namespace ccset
