#pragma once
#include <string>
#include <vector>

#include "spdcomb/types.hpp"

namespace spdcomb::render {

struct Rgb {
  unsigned char r = 0, g = 0, b = 0;
};

struct Series {
  Arrayd x;
  Arrayd y;
  Rgb color;
};

/// Line plot with framed axes and numeric tick labels; each series is drawn
/// as-is (normalize before calling if desired).
void line_plot_png(const std::string& path, const std::vector<Series>& series,
                   int width = 960, int height = 600);

/// Heatmap with wavelength on the vertical axis (increasing upward) and
/// angle on the horizontal axis; values are scaled to the matrix maximum.
void heatmap_png(const std::string& path, const Arrayd& lambda_um, const Arrayd& theta_deg,
                 const Array2Dd& values, int width = 760, int height = 640);

}  // namespace spdcomb::render
