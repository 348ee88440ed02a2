#include "render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace spdcomb::render {
namespace {

// 5x7 bitmap glyphs for tick labels (digits, sign, point, exponent).
struct Glyph {
  char c;
  unsigned char rows[7];
};
constexpr Glyph kGlyphs[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
    {'-', {0x00, 0x00, 0x00, 0x0E, 0x00, 0x00, 0x00}},
    {'+', {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00}},
    {'e', {0x00, 0x00, 0x0E, 0x11, 0x1F, 0x10, 0x0E}},
};

const Glyph* find_glyph(char c) {
  for (const auto& g : kGlyphs)
    if (g.c == c) return &g;
  return nullptr;
}

struct Canvas {
  int w, h;
  std::vector<unsigned char> rgb;

  Canvas(int width, int height) : w(width), h(height), rgb(3 * width * height, 255) {}

  void set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    unsigned char* p = &rgb[3 * (y * w + x)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  void line(int x0, int y0, int x1, int y1, Rgb c) {
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
      set(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }

  void text(int x, int y, const std::string& s, Rgb c) {
    for (char ch : s) {
      if (const Glyph* g = find_glyph(ch)) {
        for (int r = 0; r < 7; ++r)
          for (int b = 0; b < 5; ++b)
            if (g->rows[r] & (1 << (4 - b))) set(x + b, y + r, c);
      }
      x += 6;
    }
  }
};

void write_png(const std::string& path, const Canvas& canvas) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error("cannot open '" + path + "' for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw Error("PNG encoding failed for '" + path + "'");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, canvas.w, canvas.h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < canvas.h; ++y)
    png_write_row(png, const_cast<unsigned char*>(&canvas.rgb[3 * y * canvas.w]));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

constexpr int kMarginL = 70, kMarginR = 14, kMarginT = 12, kMarginB = 34;
const Rgb kBlack{0, 0, 0};
const Rgb kGrid{225, 225, 225};

struct Axes {
  double x0, x1, y0, y1;
  int w, h;

  int px(double x) const {
    return kMarginL + static_cast<int>(std::lround((x - x0) / (x1 - x0) * (w - kMarginL - kMarginR)));
  }
  int py(double y) const {
    return (h - kMarginB) - static_cast<int>(std::lround((y - y0) / (y1 - y0) * (h - kMarginT - kMarginB)));
  }
};

void draw_frame_and_ticks(Canvas& cv, const Axes& ax, bool with_grid = true) {
  const int left = kMarginL, right = cv.w - kMarginR;
  const int top = kMarginT, bottom = cv.h - kMarginB;
  if (with_grid) {
    for (int i = 0; i <= 4; ++i) {
      const double fx = ax.x0 + (ax.x1 - ax.x0) * i / 4.0;
      const double fy = ax.y0 + (ax.y1 - ax.y0) * i / 4.0;
      const int x = ax.px(fx), y = ax.py(fy);
      cv.line(x, top, x, bottom, kGrid);
      cv.line(left, y, right, y, kGrid);
    }
  }
  for (int i = 0; i <= 4; ++i) {
    const double fx = ax.x0 + (ax.x1 - ax.x0) * i / 4.0;
    const double fy = ax.y0 + (ax.y1 - ax.y0) * i / 4.0;
    const int x = ax.px(fx), y = ax.py(fy);
    cv.line(x, bottom, x, bottom + 4, kBlack);
    const std::string xl = tick_label(fx);
    cv.text(x - 3 * static_cast<int>(xl.size()), bottom + 8, xl, kBlack);
    cv.line(left - 4, y, left, y, kBlack);
    const std::string yl = tick_label(fy);
    cv.text(left - 8 - 6 * static_cast<int>(yl.size()), y - 3, yl, kBlack);
  }
  cv.line(left, top, right, top, kBlack);
  cv.line(left, bottom, right, bottom, kBlack);
  cv.line(left, top, left, bottom, kBlack);
  cv.line(right, top, right, bottom, kBlack);
}

Rgb viridis(double t) {
  static constexpr unsigned char anchors[][3] = {
      {68, 1, 84},   {71, 44, 122},  {59, 81, 139},  {44, 113, 142}, {33, 144, 141},
      {39, 173, 129}, {92, 200, 99}, {170, 220, 50}, {253, 231, 37}};
  t = std::clamp(t, 0.0, 1.0) * 8.0;
  const int i = std::min(7, static_cast<int>(t));
  const double f = t - i;
  Rgb c;
  c.r = static_cast<unsigned char>(anchors[i][0] + f * (anchors[i + 1][0] - anchors[i][0]));
  c.g = static_cast<unsigned char>(anchors[i][1] + f * (anchors[i + 1][1] - anchors[i][1]));
  c.b = static_cast<unsigned char>(anchors[i][2] + f * (anchors[i + 1][2] - anchors[i][2]));
  return c;
}

}  // namespace

void line_plot_png(const std::string& path, const std::vector<Series>& series,
                   int width, int height) {
  if (series.empty()) throw InvalidInput("nothing to plot");
  double x0 = series[0].x.minCoeff(), x1 = series[0].x.maxCoeff();
  double y0 = 0.0, y1 = series[0].y.maxCoeff();
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.size() < 2)
      throw InvalidInput("plot series needs matching x/y with >= 2 points");
    x0 = std::min(x0, s.x.minCoeff());
    x1 = std::max(x1, s.x.maxCoeff());
    y0 = std::min(y0, s.y.minCoeff());
    y1 = std::max(y1, s.y.maxCoeff());
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  y1 += 0.04 * (y1 - y0);

  Canvas cv(width, height);
  const Axes ax{x0, x1, y0, y1, width, height};
  draw_frame_and_ticks(cv, ax);
  for (const auto& s : series) {
    for (Index i = 0; i + 1 < s.x.size(); ++i)
      cv.line(ax.px(s.x[i]), ax.py(s.y[i]), ax.px(s.x[i + 1]), ax.py(s.y[i + 1]), s.color);
  }
  write_png(path, cv);
}

void heatmap_png(const std::string& path, const Arrayd& lambda_um, const Arrayd& theta_deg,
                 const Array2Dd& values, int width, int height) {
  if (lambda_um.size() != values.rows() || theta_deg.size() != values.cols())
    throw InvalidInput("heatmap axes do not match the value matrix");
  if (lambda_um.size() < 2 || theta_deg.size() < 2)
    throw InvalidInput("heatmap needs at least a 2x2 grid");
  const double vmax = values.maxCoeff();
  Canvas cv(width, height);
  const Axes ax{theta_deg.minCoeff(), theta_deg.maxCoeff(), lambda_um.minCoeff(),
                lambda_um.maxCoeff(), width, height};
  const int left = kMarginL, right = width - kMarginR;
  const int top = kMarginT, bottom = height - kMarginB;
  for (int y = top; y < bottom; ++y) {
    const double fl = static_cast<double>(bottom - 1 - y) / (bottom - 1 - top);
    const Index i = static_cast<Index>(std::lround(fl * (values.rows() - 1)));
    for (int x = left; x < right; ++x) {
      const double ft = static_cast<double>(x - left) / (right - 1 - left);
      const Index j = static_cast<Index>(std::lround(ft * (values.cols() - 1)));
      const double v = vmax > 0 ? values(i, j) / vmax : 0.0;
      cv.set(x, y, viridis(v));
    }
  }
  draw_frame_and_ticks(cv, ax, /*with_grid=*/false);
  write_png(path, cv);
}

}  // namespace spdcomb::render
