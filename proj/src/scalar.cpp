#include "ccset/scalar.hpp"

#include <charconv>
#include <cstdlib>
#include <system_error>

namespace ccset {

double scalar_sqrt(double v) { return std::sqrt(v); }

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (sgn(v) < 0) return std::nullopt;
  const mpz_class& num = v.get_num();
  const mpz_class& den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational root(rn, rd);
  root.canonicalize();
  return root;
}

Rational scalar_sqrt(const Rational& v) {
  if (auto root = exact_sqrt(v)) return *root;
  if (sgn(v) <= 0) return Rational(0);
  mpf_class f(v, 256);
  mpf_class r(0, 256);
  mpf_sqrt(r.get_mpf_t(), f.get_mpf_t());
  return Rational(r);
}

std::string format_scalar(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string format_scalar(const Rational& v) { return v.get_str(); }

template <>
std::optional<double> parse_scalar<double>(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // p/q is accepted so that rational files can be read into the float tower.
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_scalar<double>(text.substr(0, slash));
    auto den = parse_scalar<double>(text.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

namespace {

std::optional<mpz_class> parse_integer(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  std::string s(text.front() == '+' ? text.substr(1) : text);
  return mpz_class(s, 10);
}

}  // namespace

template <>
std::optional<Rational> parse_scalar<Rational>(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto num = parse_integer(text);
    if (!num) return std::nullopt;
    return Rational(*num);
  }
  auto num = parse_integer(text.substr(0, slash));
  auto den = parse_integer(text.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  Rational q(*num, *den);
  q.canonicalize();
  return q;
}

}  // namespace ccset
