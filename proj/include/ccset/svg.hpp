#pragma once

// Minimal SVG 1.1 writer. World coordinates are mapped into a square canvas
// with y pointing up; every number is printed with fixed precision so
// identical inputs give byte-identical files.

#include <sstream>
#include <string>
#include <vector>

#include "ccset/angle.hpp"
#include "ccset/fill.hpp"
#include "ccset/spiral.hpp"

namespace ccset {

class SvgCanvas {
 public:
  /// Fits the bounding box of `extent` (plus a 5% margin) into a
  /// size x size canvas.
  SvgCanvas(const std::vector<Point2>& extent, int size = 640);

  void polygon(const std::vector<Point2>& pts, const std::string& fill, const std::string& stroke);
  void segment(const Point2& a, const Point2& b, const std::string& stroke, double width = 1.0);
  void dot(const Point2& p, double radius, const std::string& fill);
  void label(const Point2& p, const std::string& text);

  std::string str() const;

 private:
  std::string px(const Point2& p) const;

  double x0_ = 0, y0_ = 0, scale_ = 1;
  int size_;
  std::ostringstream body_;
};

/// Spiral orbit: triangles P_n P_{n+1} P_{n+2} shaded from dark to light,
/// the four queue lines and P_inf.
std::string spiral_svg(const SpiralState<double>& state);

/// A fill cloud, with the segment IA or the quadrilateral outline.
std::string segment_svg(const FillCloud& cloud);
std::string quad_svg(const FillCloud& cloud, const QuadPatch<double>& patch);

/// Bar chart of a coverage histogram over (0, pi).
std::string coverage_svg(const CoverageHistogram& hist);

}  // namespace ccset
