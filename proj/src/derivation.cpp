#include "ccset/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ccset {

namespace {

// The verifier deliberately avoids the kernel: centers are recomputed from
// barycentric weights built out of squared side lengths, a different
// algebraic route from the kernel's bisector system.
template <class T>
struct Recomputed {
  bool degenerate = false;
  Point<T> center;
};

// Exact barycentric center; float inputs are promoted to rationals first, so
// the only rounding left in a float residual is the builder's.
template <class T>
Recomputed<Rational> barycentric_center(const Point<T>& pa, const Point<T>& pb, const Point<T>& pc) {
  const ExactPoint A{Rational(pa.x), Rational(pa.y)};
  const ExactPoint B{Rational(pb.x), Rational(pb.y)};
  const ExactPoint C{Rational(pc.x), Rational(pc.y)};
  const Rational ax = B.x - A.x, ay = B.y - A.y;
  const Rational bx = C.x - A.x, by = C.y - A.y;
  const Rational cx = C.x - B.x, cy = C.y - B.y;
  const Rational a2 = cx * cx + cy * cy;  // |BC|^2
  const Rational b2 = bx * bx + by * by;  // |CA|^2
  const Rational c2 = ax * ax + ay * ay;  // |AB|^2
  const Rational wa = a2 * (b2 + c2 - a2);
  const Rational wb = b2 * (c2 + a2 - b2);
  const Rational wc = c2 * (a2 + b2 - c2);
  const Rational w = wa + wb + wc;  // 16 * area^2

  const Rational twice_area = ax * by - ay * bx;
  if (twice_area == 0) return {true, {}};
  if constexpr (!is_exact_v<T>) {
    // Same relative threshold as the float kernel.
    const double longest = to_double(std::max({a2, b2, c2}));
    if (std::fabs(to_double(twice_area)) <= kCollinearTolerance * longest) return {true, {}};
  }
  return {false, {Rational(A.x + (wb * ax + wc * bx) / w), Rational(A.y + (wb * ay + wc * by) / w)}};
}

template <class T>
double magnitude(const Point<T>& p) {
  return std::hypot(to_double(p.x), to_double(p.y));
}

}  // namespace

template <class T>
VerifyReport verify(const BasicDerivation<T>& d, double tol) {
  const auto& steps = d.steps();
  for (std::size_t n = 0; n < steps.size(); ++n) {
    const auto& s = steps[n];
    if (s.kind == StepKind::Seed) continue;
    for (std::size_t parent : s.parents) {
      if (parent >= n) return {false, n, 0.0, "cites step " + std::to_string(parent) + " which is not earlier"};
    }
    const auto r = barycentric_center(steps[s.parents[0]].point, steps[s.parents[1]].point, steps[s.parents[2]].point);
    if (r.degenerate) return {false, n, 0.0, "ancestor triple is collinear"};

    const ExactPoint stored{Rational(s.point.x), Rational(s.point.y)};
    const ExactPoint diff = stored - r.center;
    if constexpr (is_exact_v<T>) {
      if (tol == 0.0) {
        if (!(stored == r.center)) {
          return {false, n, std::sqrt(to_double(norm_sq(diff))), "stored point differs from the circle center"};
        }
        continue;
      }
    }
    const double residual = std::sqrt(to_double(norm_sq(diff)));
    if (!(residual <= tol * std::max(1.0, magnitude(r.center)))) {
      return {false, n, residual, "stored point differs from the circle center"};
    }
  }
  return {};
}

template VerifyReport verify(const Derivation&, double);
template VerifyReport verify(const ExactDerivation&, double);

VerifyReport verify(const AnyDerivation& d, double tol) {
  return std::visit([tol](const auto& x) { return verify(x, tol); }, d);
}

template <class T>
std::string serialize(const BasicDerivation<T>& d) {
  std::ostringstream out;
  out << "ccset-derivation v1 tower=" << ScalarTraits<T>::tower << " tol=" << format_scalar(d.tolerance()) << '\n';
  for (const auto& s : d.steps()) {
    if (s.kind == StepKind::Seed) {
      out << "S " << format_scalar(s.point.x) << ' ' << format_scalar(s.point.y) << '\n';
    } else {
      out << "C " << s.parents[0] << ' ' << s.parents[1] << ' ' << s.parents[2] << ' ' << format_scalar(s.point.x)
          << ' ' << format_scalar(s.point.y) << '\n';
    }
  }
  return out.str();
}

template std::string serialize(const Derivation&);
template std::string serialize(const ExactDerivation&);

std::string serialize(const AnyDerivation& d) {
  return std::visit([](const auto& x) { return serialize(x); }, d);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + reason);
}

std::size_t parse_index(std::string_view text, std::size_t line) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
    parse_fail(line, "bad step index '" + std::string(text) + "'");
  }
  return std::stoull(std::string(text));
}

template <class T>
BasicDerivation<T> parse_body(const std::vector<std::pair<std::size_t, std::string_view>>& lines, double tol) {
  BasicDerivation<T> d(tol);
  for (const auto& [number, line] : lines) {
    const auto f = split_fields(line);
    const auto coord = [&](std::string_view text) {
      auto v = parse_scalar<T>(text);
      if (!v) parse_fail(number, "bad coordinate '" + std::string(text) + "'");
      return *v;
    };
    if (f[0] == "S") {
      if (f.size() != 3) parse_fail(number, "seed record needs 2 coordinates");
      d.add_seed({coord(f[1]), coord(f[2])});
    } else if (f[0] == "C") {
      if (f.size() != 6) parse_fail(number, "center record needs 3 indices and 2 coordinates");
      const std::size_t own = d.size();
      std::array<std::size_t, 3> idx{parse_index(f[1], number), parse_index(f[2], number), parse_index(f[3], number)};
      for (std::size_t i : idx) {
        if (i >= own) {
          parse_fail(number, "DAG violation: step " + std::to_string(own) + " cites step " + std::to_string(i) +
                                 " which is not earlier");
        }
      }
      d.add_center_unchecked(idx[0], idx[1], idx[2], {coord(f[4]), coord(f[5])});
    } else {
      parse_fail(number, "unknown record type '" + std::string(f[0]) + "'");
    }
  }
  return d;
}

}  // namespace

AnyDerivation parse_derivation(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> records;
  std::optional<std::pair<std::size_t, std::string_view>> header;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      header.emplace(number, line);
    } else {
      records.emplace_back(number, line);
    }
    if (end == text.size()) break;
  }
  if (!header) parse_fail(1, "missing header");

  const auto h = split_fields(header->second);
  if (h.size() != 4 || h[0] != "ccset-derivation" || h[1] != "v1" || h[2].substr(0, 6) != "tower=" ||
      h[3].substr(0, 4) != "tol=") {
    parse_fail(header->first, "expected 'ccset-derivation v1 tower=<rational|float64> tol=<decimal>'");
  }
  const auto tol = parse_scalar<double>(h[3].substr(4));
  if (!tol || *tol < 0) parse_fail(header->first, "bad tolerance");
  const auto tower = h[2].substr(6);
  if (tower == "float64") return parse_body<double>(records, *tol);
  if (tower == "rational") return parse_body<Rational>(records, *tol);
  parse_fail(header->first, "unknown tower '" + std::string(tower) + "'");
}

Derivation parse_float_derivation(std::string_view text) {
  AnyDerivation any = parse_derivation(text);
  if (auto* d = std::get_if<Derivation>(&any)) return std::move(*d);
  const auto& exact = std::get<ExactDerivation>(any);
  Derivation d(exact.tolerance());
  for (const auto& s : exact.steps()) {
    if (s.kind == StepKind::Seed) {
      d.add_seed(to_float(s.point));
    } else {
      d.add_center_unchecked(s.parents[0], s.parents[1], s.parents[2], to_float(s.point));
    }
  }
  return d;
}

template <class T>
std::pair<BasicDerivation<T>, std::size_t> extract_ancestors(const BasicDerivation<T>& d, std::size_t target) {
  if (target >= d.size()) throw Error(ErrorKind::InvalidArgument, "target index out of range");
  std::vector<bool> keep(d.size(), false);
  keep[target] = true;
  for (std::size_t n = target + 1; n-- > 0;) {
    const auto& s = d.step(n);
    if (s.kind == StepKind::Seed) {
      keep[n] = true;
    } else if (keep[n]) {
      for (std::size_t p : s.parents) keep[p] = true;
    }
  }
  for (std::size_t n = target + 1; n < d.size(); ++n) {
    if (d.step(n).kind == StepKind::Seed) keep[n] = true;
  }

  BasicDerivation<T> out(d.tolerance());
  std::vector<std::size_t> remap(d.size(), 0);
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (!keep[n]) continue;
    const auto& s = d.step(n);
    if (s.kind == StepKind::Seed) {
      remap[n] = out.add_seed(s.point);
    } else {
      remap[n] = out.add_center_unchecked(remap[s.parents[0]], remap[s.parents[1]], remap[s.parents[2]], s.point);
    }
  }
  return {std::move(out), remap[target]};
}

template std::pair<Derivation, std::size_t> extract_ancestors(const Derivation&, std::size_t);
template std::pair<ExactDerivation, std::size_t> extract_ancestors(const ExactDerivation&, std::size_t);

}  // namespace ccset
