#include "ccset/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>

#include "ccset/angle.hpp"
#include "ccset/derivation.hpp"
#include "ccset/fill.hpp"
#include "ccset/spiral.hpp"
#include "ccset/svg.hpp"

namespace ccset::cli {

namespace {

std::string fmt(double v) { return format_scalar(v); }
std::string fmt(const Point2& p) { return "(" + fmt(p.x) + ", " + fmt(p.y) + ")"; }

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const auto v = parse_scalar<double>(std::string_view(text).substr(start, comma - start));
    if (!v) throw Error(ErrorKind::InvalidArgument, "bad number in " + what + ": '" + text + "'");
    values.push_back(*v);
    start = comma + 1;
  }
  if (values.size() != expected) {
    throw Error(ErrorKind::InvalidArgument, what + " needs " + std::to_string(expected) + " comma-separated numbers");
  }
  return values;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

std::string classification(const OrbitReport& report, const AngleFraction& alpha) {
  if (const auto* p = std::get_if<EventuallyPeriodic>(&report.kind)) {
    return "eventually periodic: preperiod " + std::to_string(p->preperiod) + ", period " + std::to_string(p->period);
  }
  if (const auto* t = std::get_if<Terminates>(&report.kind)) {
    if (t->step == 1 && alpha.is_zero()) return "terminates at step 1 (alpha is a multiple of pi)";
    return "terminates at step " + std::to_string(t->step) + " (Q" + std::to_string(t->step - 1) + " at origin)";
  }
  return "undetermined after " + std::to_string(std::get<Undetermined>(report.kind).horizon) + " steps";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::ParseError:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circle-center closure: cotangent dynamics, similarity spirals, filling and reach certificates"};
  app.name("ccset");
  app.require_subcommand(1);
  int code = 0;

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of Q_j = (cot 2^(j-1) alpha, 0) with classification");
  std::string alpha_text;
  std::uint64_t orbit_steps = 20;
  orbit_cmd->add_option("--alpha", alpha_text, "alpha as a fraction p/q of pi")->required();
  orbit_cmd->add_option("--steps", orbit_steps, "number of orbit points to print")->capture_default_str();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Angle whose orbit has a given preperiod and period");
  std::uint64_t preperiod = 0, period = 2;
  std::string block;
  synth_cmd->add_option("--preperiod", preperiod, "preperiod L")->required();
  synth_cmd->add_option("--period", period, "period P (at least 2)")->required();
  synth_cmd->add_option("--block", block, "repeating block of P binary digits (default 1 followed by zeros)");

  // tm
  auto* tm_cmd = app.add_subcommand("tm", "Thue-Morse bits and the bound on its orbit");
  std::uint64_t tm_bits = std::uint64_t{1} << 20, tm_steps = std::uint64_t{1} << 16;
  tm_cmd->add_option("--bits", tm_bits, "prefix length checked for 000 and 111")->capture_default_str();
  tm_cmd->add_option("--steps", tm_steps, "orbit points checked against 1 + sqrt(2)")->capture_default_str();

  // coverage
  auto* cov_cmd = app.add_subcommand("coverage", "Histogram of arccot over random orbits");
  std::uint64_t cov_samples = 100, cov_steps = 10000, cov_bins = 100, cov_seed = 0;
  std::string cov_svg;
  cov_cmd->add_option("--samples", cov_samples, "random orbits")->capture_default_str();
  cov_cmd->add_option("--steps", cov_steps, "points per orbit")->capture_default_str();
  cov_cmd->add_option("--bins", cov_bins, "bins over (0, pi)")->capture_default_str();
  cov_cmd->add_option("--seed", cov_seed, "random seed")->required();
  cov_cmd->add_option("--svg", cov_svg, "write the histogram as SVG");

  // spiral
  auto* spiral_cmd = app.add_subcommand("spiral", "Similarity spiral P_n = C(P_{n-1}, P_{n-2}, P_{n-3})");
  std::string beta_text, x_text, spiral_svg_path;
  std::size_t spiral_count = 20;
  bool spiral_exact = false;
  auto* beta_opt = spiral_cmd->add_option(
      "--beta", beta_text, "apex angle as a fraction p/q of pi; start (-1,0), (1,0), (0, cot(beta/2)) (default 2/11)");
  spiral_cmd->add_option("--x", x_text, "start (0,-1), (0,1), (x,0) instead")->excludes(beta_opt);
  spiral_cmd->add_flag("--exact", spiral_exact, "rational tower (with --x)");
  spiral_cmd->add_option("--count", spiral_count, "number of points")->capture_default_str();
  spiral_cmd->add_option("--svg", spiral_svg_path, "write the figure as SVG");

  // fill
  auto* fill_cmd = app.add_subcommand("fill", "Segment filling, or a quadrilateral over a filled segment");
  std::string fill_mode = "segment", patch_text = "0.05,0.45,0.55,0.95", fill_svg_path, fill_out;
  int fill_depth = 8, fill_width = 0, fill_grid = 16;
  double fill_ratio = 0.5;
  fill_cmd->add_option("--mode", fill_mode, "segment or quad")
      ->check(CLI::IsMember({"segment", "quad"}))
      ->capture_default_str();
  fill_cmd->add_option("--depth", fill_depth, "dyadic depth")->capture_default_str();
  fill_cmd->add_option("--width", fill_width, "base points per row (default 3 * depth)");
  fill_cmd->add_option("--ratio", fill_ratio, "ratio of the geometric base sequence")->capture_default_str();
  fill_cmd->add_option("--grid", fill_grid, "quad lattice size")->capture_default_str();
  fill_cmd->add_option("--patch", patch_text, "quad parameters a,b,c,d")->capture_default_str();
  fill_cmd->add_option("--svg", fill_svg_path, "write the cloud as SVG");
  fill_cmd->add_option("--out", fill_out, "write the derivation to this file");

  // reach
  auto* reach_cmd = app.add_subcommand("reach", "Derivation ending within epsilon of a target");
  std::string target_text, triangle_text = "0,-1,0,1,1,0", reach_out = "-";
  double epsilon = 1e-3;
  ReachOptions reach_opts;
  reach_cmd->add_option("--target", target_text, "target x,y")->required();
  reach_cmd->add_option("--triangle", triangle_text, "seed x1,y1,x2,y2,x3,y3")->capture_default_str();
  reach_cmd->add_option("--epsilon", epsilon, "accuracy")->capture_default_str();
  reach_cmd->add_option("--depth", reach_opts.depth, "initial segment depth")->capture_default_str();
  reach_cmd->add_option("--grid", reach_opts.grid, "quad lattice size")->capture_default_str();
  reach_cmd->add_option("--retries", reach_opts.max_retries, "deepening retries")->capture_default_str();
  reach_cmd->add_option("--out", reach_out, "derivation file, - for stdout (summary then goes to stderr)")
      ->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a derivation file; exit 1 on failure");
  std::string verify_path;
  double verify_tol = -1;
  verify_cmd->add_option("file", verify_path, "derivation file, - for stdin")->required();
  verify_cmd->add_option("--tol", verify_tol, "tolerance (default: the file's header)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (orbit_cmd->parsed()) {
      const AngleFraction alpha = AngleFraction::parse(alpha_text);
      const OrbitReport report = orbit(alpha, orbit_steps);
      out << "j\talpha_j/pi\tx_j\n";
      for (std::size_t j = 0; j < report.points.size(); ++j) {
        out << j + 1 << '\t' << report.angles[j].to_string() << '\t' << fmt(report.points[j].x) << '\n';
      }
      out << classification(report, alpha) << '\n';
    } else if (synth_cmd->parsed()) {
      const AngleFraction alpha =
          synthesize_alpha(preperiod, period, block.empty() ? std::nullopt : std::optional<std::string>(block));
      out << "alpha/pi = " << alpha.to_string() << '\n';
      out << classification(orbit(alpha, 1), alpha) << '\n';
    } else if (tm_cmd->parsed()) {
      const auto bits = thue_morse_prefix(tm_bits);
      std::uint64_t triples = 0;
      for (std::size_t i = 2; i < bits.size(); ++i) triples += (bits[i] == bits[i - 1] && bits[i] == bits[i - 2]);
      const OrbitReport report = orbit(thue_morse(tm_bits), tm_steps);
      double widest = 0.0;
      for (const auto& p : report.points) widest = std::max(widest, std::fabs(p.x));
      const double bound = 1 + std::numbers::sqrt2;
      out << "bits checked: " << tm_bits << '\n';
      out << "runs of three equal bits: " << triples << '\n';
      out << "orbit points: " << report.points.size() << '\n';
      out << "max |x|: " << fmt(widest) << '\n';
      out << "bound 1 + sqrt(2): " << fmt(bound) << '\n';
      const bool ok = triples == 0 && widest <= bound + 1e-9;
      out << (ok ? "ok" : "VIOLATED") << '\n';
      code = ok ? 0 : 1;
    } else if (cov_cmd->parsed()) {
      const auto hist = coverage_experiment(cov_samples, cov_steps, cov_bins, cov_seed);
      out << "bin\tcount\n";
      for (std::size_t b = 0; b < hist.counts.size(); ++b) out << b << '\t' << hist.counts[b] << '\n';
      out << "empty fraction: " << fmt(hist.empty_fraction) << '\n';
      if (!cov_svg.empty()) write_file(cov_svg, coverage_svg(hist));
    } else if (spiral_cmd->parsed()) {
      if (spiral_exact && x_text.empty()) throw Error(ErrorKind::InvalidArgument, "--exact needs --x");
      if (spiral_exact) {
        const auto x = parse_scalar<Rational>(x_text);
        if (!x) throw Error(ErrorKind::InvalidArgument, "--x must be an integer or p/q with --exact");
        const auto state = spiral_orbit<Rational>({0, -1}, {0, 1}, {*x, 0}, spiral_count);
        out << "tower: rational\n";
        out << "lambda = " << fmt(state.lambda) << " (formula " << fmt(lambda_of(state.beta)) << ")\n";
        out << "P_inf = (" << format_scalar(state.p_infinity.x) << ", " << format_scalar(state.p_infinity.y) << ")\n";
        const auto closed = p_infinity_formula(*x);
        out << "closed form = (" << format_scalar(closed.x) << ", " << format_scalar(closed.y) << ")\n";
        for (std::size_t n = 0; n < state.points.size(); ++n) {
          out << 'P' << n + 1 << '\t' << format_scalar(state.points[n].x) << '\t' << format_scalar(state.points[n].y)
              << '\n';
        }
        if (!spiral_svg_path.empty()) {
          SpiralState<double> f;
          for (const auto& p : state.points) f.points.push_back(to_float(p));
          f.p_infinity = to_float(state.p_infinity);
          write_file(spiral_svg_path, spiral_svg(f));
        }
      } else {
        Point2 p1, p2, p3;
        if (!x_text.empty()) {
          const auto x = parse_scalar<double>(x_text);
          if (!x) throw Error(ErrorKind::InvalidArgument, "--x must be a number");
          p1 = {0, -1}, p2 = {0, 1}, p3 = {*x, 0};
        } else {
          const AngleFraction beta = AngleFraction::parse(beta_text.empty() ? "2/11" : beta_text);
          const double b = beta.value() * std::numbers::pi;
          if (!(b > 0)) throw Error(ErrorKind::OutOfRange, "beta must lie in (0, pi)");
          p1 = {-1, 0}, p2 = {1, 0}, p3 = {0, 1 / std::tan(b / 2)};
        }
        const auto state = spiral_orbit<double>(p1, p2, p3, spiral_count);
        out << "beta/pi = " << fmt(state.beta / std::numbers::pi) << '\n';
        out << "lambda = " << fmt(state.lambda) << " (formula " << fmt(lambda_of(state.beta)) << ")\n";
        out << "P_inf = " << fmt(state.p_infinity) << '\n';
        for (std::size_t n = 0; n < state.points.size(); ++n) {
          out << 'P' << n + 1 << '\t' << fmt(state.points[n].x) << '\t' << fmt(state.points[n].y) << '\n';
        }
        if (state.points.size() >= 12) {
          const auto q = orderly_queues_check(state, 1e-8);
          for (std::size_t i = 0; i < 4; ++i) {
            out << "queue S" << i + 1 << ": residual " << fmt(q.lines[i].residual) << ", incidence "
                << fmt(q.lines[i].incidence) << '\n';
          }
          out << "|cos(S1,S3)| = " << fmt(q.perpendicular_13) << ", |cos(S2,S4)| = " << fmt(q.perpendicular_24) << '\n';
          out << "orderly queues: " << (q.pass ? "pass" : "fail") << '\n';
        }
        if (!spiral_svg_path.empty()) write_file(spiral_svg_path, spiral_svg(state));
      }
    } else if (fill_cmd->parsed()) {
      const int width = fill_width > 0 ? fill_width : std::max(1, 3 * fill_depth);
      if (!(fill_ratio > 0 && fill_ratio < 1)) throw Error(ErrorKind::InvalidArgument, "--ratio must lie in (0, 1)");
      std::vector<Point2> base;
      double g = 1.0;
      for (int j = 0; j < width; ++j, g *= fill_ratio) base.push_back({g, 0.0});
      const FillCloud segment = segment_fill({0, 0}, {0, 1}, base, fill_depth, width);
      const FillCloud* shown = &segment;
      FillCloud quad;
      std::optional<QuadPatch<double>> patch;
      if (fill_mode == "quad") {
        const auto v = parse_list(patch_text, 4, "--patch");
        patch = make_patch(v[0], v[1], v[2], v[3]);
        quad = quad_fill({-1, 0}, segment, *patch, fill_grid);
        shown = &quad;
      }
      const auto report = verify(shown->derivation, kDefaultFloatTolerance);
      out << "mode: " << fill_mode << '\n';
      out << "cloud points: " << shown->points.size() << '\n';
      out << "resolution: " << fmt(shown->resolution) << '\n';
      out << "derivation steps: " << shown->derivation.size() << '\n';
      out << "verify: " << (report.pass ? "pass" : "fail") << '\n';
      if (!fill_svg_path.empty()) write_file(fill_svg_path, patch ? quad_svg(quad, *patch) : segment_svg(segment));
      if (!fill_out.empty()) write_file(fill_out, serialize(shown->derivation));
      code = report.pass ? 0 : 1;
    } else if (reach_cmd->parsed()) {
      const auto t = parse_list(target_text, 2, "--target");
      const auto s = parse_list(triangle_text, 6, "--triangle");
      const auto result =
          reach({t[0], t[1]}, {{s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}}, epsilon, reach_opts);
      std::ostream& summary = reach_out == "-" ? err : out;
      const std::string text = serialize(result.derivation);
      if (reach_out == "-") {
        out << text;
      } else {
        write_file(reach_out, text);
      }
      summary << "final point " << fmt(result.point) << " error " << fmt(result.error) << " steps "
              << result.derivation.size() << " attempts " << result.attempts << '\n';
    } else if (verify_cmd->parsed()) {
      std::string text;
      if (verify_path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      } else {
        std::ifstream f(verify_path, std::ios::binary);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read '" + verify_path + "'");
        text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
      }
      const AnyDerivation d = parse_derivation(text);
      const double tol = verify_tol >= 0 ? verify_tol : std::visit([](const auto& x) { return x.tolerance(); }, d);
      const auto report = verify(d, tol);
      const std::size_t steps = std::visit([](const auto& x) { return x.size(); }, d);
      if (report.pass) {
        out << "pass: " << steps << " steps\n";
      } else {
        out << "fail: step " << report.step << " residual " << fmt(report.residual) << ": " << report.reason << '\n';
        code = 1;
      }
    }
  } catch (const Error& e) {
    const std::string msg = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    err << "error\t" << to_string(e.kind()) << '\t' << (msg.rfind(prefix, 0) == 0 ? msg.substr(prefix.size()) : msg)
        << '\n';
    return exit_code(e.kind());
  }
  return code;
}

}  // namespace ccset::cli
