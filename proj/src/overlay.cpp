#include "soagdd/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace soagdd {

void draw_line(RgbImage& canvas, int x0, int y0, int x1, int y1, Color c) {
  // Bresenham, all octants.
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    canvas.set(x0, y0, c.r, c.g, c.b);
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

void draw_ellipse(RgbImage& canvas, double cx, double cy, double a, double b, double angle,
                  Color c) {
  // Closed polyline fine enough that consecutive vertices are <= 1 px apart.
  const int steps = std::max(16, static_cast<int>(std::ceil(2.0 * std::numbers::pi * std::max(a, b))));
  const double ca = std::cos(angle);
  const double sa = std::sin(angle);
  auto vertex = [&](int i) {
    const double t = 2.0 * std::numbers::pi * i / steps;
    const double u = a * std::cos(t);
    const double v = b * std::sin(t);
    return std::pair{static_cast<int>(std::lround(cx + u * ca - v * sa)),
                     static_cast<int>(std::lround(cy + u * sa + v * ca))};
  };
  auto prev = vertex(0);
  for (int i = 1; i <= steps; ++i) {
    const auto cur = vertex(i);
    draw_line(canvas, prev.first, prev.second, cur.first, cur.second, c);
    prev = cur;
  }
}

RgbImage render_blob_overlay(const Plane& img, const std::vector<Blob>& blobs) {
  RgbImage canvas = to_rgb(img);
  for (const Blob& b : blobs) {
    draw_ellipse(canvas, b.cx, b.cy, 2.0 * b.short_axis, 2.0 * b.long_axis, b.orientation, kRed);
  }
  return canvas;
}

RgbImage render_match_overlay(const Plane& a, const std::vector<Blob>& blobs_a, const Plane& b,
                              const std::vector<Blob>& blobs_b,
                              const std::vector<MatchPair>& matches) {
  const RgbImage left = render_blob_overlay(a, blobs_a);
  const RgbImage right = render_blob_overlay(b, blobs_b);
  RgbImage canvas(left.width + right.width, std::max(left.height, right.height));
  auto blit = [&canvas](const RgbImage& src, int ox) {
    for (int y = 0; y < src.height; ++y) {
      for (int x = 0; x < src.width; ++x) {
        const std::size_t i = (static_cast<std::size_t>(y) * src.width + x) * 3;
        canvas.set(x + ox, y, src.rgb[i], src.rgb[i + 1], src.rgb[i + 2]);
      }
    }
  };
  blit(left, 0);
  blit(right, left.width);
  for (const MatchPair& m : matches) {
    const Blob& p = blobs_a[m.index_a];
    const Blob& q = blobs_b[m.index_b];
    draw_line(canvas, static_cast<int>(std::lround(p.cx)), static_cast<int>(std::lround(p.cy)),
              static_cast<int>(std::lround(q.cx)) + left.width, static_cast<int>(std::lround(q.cy)),
              kGreen);
  }
  return canvas;
}

}  // namespace soagdd
