#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ccset {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Smallest k >= 1 with base^k = 1 (mod m). Requires gcd(base, m) = 1, m > 1.
std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t m);

/// Splits q = 2^k * m with m odd.
struct TwoAdicSplit {
  int valuation;
  std::uint64_t odd_part;
};
TwoAdicSplit split_two_adic(std::uint64_t q);

}  // namespace ccset
