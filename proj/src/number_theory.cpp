#include "ccset/number_theory.hpp"

#include <bit>
#include <numeric>

#include "ccset/error.hpp"

namespace ccset {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> factors;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t m) {
  if (m <= 1 || std::gcd(base, m) != 1) {
    throw Error(ErrorKind::InvalidArgument, "multiplicative order needs m > 1 and gcd(base, m) = 1");
  }
  // The order divides phi(m); strip prime factors while the power stays 1.
  std::uint64_t order = euler_phi(m);
  for (auto [p, e] : factorize(order)) {
    for (int i = 0; i < e && order % p == 0; ++i) {
      if (pow_mod(base, order / p, m) != 1) break;
      order /= p;
    }
  }
  return order;
}

TwoAdicSplit split_two_adic(std::uint64_t q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "zero has no 2-adic split");
  const int k = std::countr_zero(q);
  return {k, q >> k};
}

}  // namespace ccset
