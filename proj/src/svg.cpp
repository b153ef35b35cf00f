#include "ccset/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>

namespace ccset {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string gray(double level) {
  const int g = std::clamp(static_cast<int>(level * 255.0 + 0.5), 0, 255);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(const std::vector<Point2>& extent, int size) : size_(size) {
  double x1 = 1, y1 = 1;
  if (!extent.empty()) {
    x0_ = x1 = extent[0].x;
    y0_ = y1 = extent[0].y;
    for (const auto& p : extent) {
      x0_ = std::min(x0_, p.x), x1 = std::max(x1, p.x);
      y0_ = std::min(y0_, p.y), y1 = std::max(y1, p.y);
    }
  }
  double span = std::max(x1 - x0_, y1 - y0_);
  if (!(span > 0)) span = 1;
  x0_ -= 0.05 * span + (span - (x1 - x0_)) / 2;
  y0_ -= 0.05 * span + (span - (y1 - y0_)) / 2;
  scale_ = size / (1.1 * span);
}

std::string SvgCanvas::px(const Point2& p) const {
  return num((p.x - x0_) * scale_) + "," + num(size_ - (p.y - y0_) * scale_);
}

void SvgCanvas::polygon(const std::vector<Point2>& pts, const std::string& fill, const std::string& stroke) {
  body_ << "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << px(pts[i]);
  body_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"0.5\"/>\n";
}

void SvgCanvas::segment(const Point2& a, const Point2& b, const std::string& stroke, double width) {
  const auto pa = px(a), pb = px(b);
  const auto ca = pa.find(','), cb = pb.find(',');
  body_ << "<line x1=\"" << pa.substr(0, ca) << "\" y1=\"" << pa.substr(ca + 1) << "\" x2=\"" << pb.substr(0, cb)
        << "\" y2=\"" << pb.substr(cb + 1) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width)
        << "\"/>\n";
}

void SvgCanvas::dot(const Point2& p, double radius, const std::string& fill) {
  const auto s = px(p);
  const auto c = s.find(',');
  body_ << "<circle cx=\"" << s.substr(0, c) << "\" cy=\"" << s.substr(c + 1) << "\" r=\"" << num(radius)
        << "\" fill=\"" << fill << "\"/>\n";
}

void SvgCanvas::label(const Point2& p, const std::string& text) {
  const auto s = px(p);
  const auto c = s.find(',');
  body_ << "<text x=\"" << s.substr(0, c) << "\" y=\"" << s.substr(c + 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << text << "</text>\n";
}

std::string SvgCanvas::str() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size_ << "\" height=\"" << size_
      << "\" viewBox=\"0 0 " << size_ << ' ' << size_ << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

std::string spiral_svg(const SpiralState<double>& state) {
  const auto& P = state.points;
  SvgCanvas canvas(P);
  const std::size_t triangles = P.size() >= 3 ? P.size() - 2 : 0;
  // Later triangles are drawn lighter.
  for (std::size_t n = 0; n < triangles; ++n) {
    const double level = triangles > 1 ? 0.25 + 0.7 * static_cast<double>(n) / (triangles - 1) : 0.25;
    canvas.polygon({P[n], P[n + 1], P[n + 2]}, gray(level), "#000000");
  }
  static const char* kQueueColors[4] = {"#c0392b", "#2471a3", "#229954", "#b9770e"};
  for (std::size_t q = 0; q < 4 && q < P.size(); ++q) canvas.segment(state.p_infinity, P[q], kQueueColors[q], 0.8);
  for (std::size_t n = 0; n < P.size(); ++n) canvas.dot(P[n], 2.0, kQueueColors[n % 4]);
  canvas.dot(state.p_infinity, 3.0, "#000000");
  for (std::size_t n = 0; n < std::min<std::size_t>(P.size(), 4); ++n) canvas.label(P[n], "P" + std::to_string(n + 1));
  return canvas.str();
}

std::string segment_svg(const FillCloud& cloud) {
  const Point2 i = cloud.frame(Point2{0.0, 0.0});
  const Point2 a = cloud.frame(Point2{0.0, 1.0});
  std::vector<Point2> extent{i, a};
  for (const auto& p : cloud.points) extent.push_back(p);
  SvgCanvas canvas(extent);
  canvas.segment(i, a, "#999999", 1.0);
  for (const auto& p : cloud.points) canvas.dot(p, 1.5, "#1f4e79");
  canvas.label(i, "I");
  canvas.label(a, "A");
  return canvas.str();
}

std::string quad_svg(const FillCloud& cloud, const QuadPatch<double>& patch) {
  std::vector<Point2> outline;
  for (const auto& v : patch.vertices()) outline.push_back(cloud.frame(v));
  std::vector<Point2> extent = outline;
  for (const auto& p : cloud.points) extent.push_back(p);
  SvgCanvas canvas(extent);
  canvas.polygon(outline, "#eaf2f8", "#1f4e79");
  for (const auto& p : cloud.points) canvas.dot(p, 1.2, "#1f4e79");
  return canvas.str();
}

std::string coverage_svg(const CoverageHistogram& hist) {
  const std::size_t bins = hist.counts.size();
  std::uint64_t peak = 1;
  for (auto c : hist.counts) peak = std::max(peak, c);
  SvgCanvas canvas({{0.0, 0.0}, {static_cast<double>(bins), static_cast<double>(bins)}});
  for (std::size_t b = 0; b < bins; ++b) {
    const double h = static_cast<double>(bins) * static_cast<double>(hist.counts[b]) / static_cast<double>(peak);
    const double x = static_cast<double>(b);
    canvas.polygon({{x, 0.0}, {x + 1, 0.0}, {x + 1, h}, {x, h}}, hist.counts[b] ? "#5d6d7e" : "#e74c3c", "none");
  }
  return canvas.str();
}

}  // namespace ccset
