#include "soagdd/pyramid.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace soagdd {

int pyramid_depth(int rows, int cols, int t) {
  if (t < 0) {
    throw InvalidArgument("pyramid_depth: t must be non-negative");
  }
  const int m = std::min(rows, cols);
  if (m < 1) {
    throw InvalidArgument("pyramid_depth: empty image");
  }
  // floor(log2(m)) for positive integers.
  const int log2m = std::bit_width(static_cast<unsigned>(m)) - 1;
  const int n = log2m - t;
  if (n < 1) {
    throw InvalidArgument("pyramid_depth: t=" + std::to_string(t) + " too large for min side " +
                          std::to_string(m));
  }
  return n;
}

GrayImage downsample_2x(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  const int ow = (w + 1) / 2;
  const int oh = (h + 1) / 2;
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    const int y0 = 2 * y;
    const int y1 = std::min(y0 + 1, h - 1);
    for (int x = 0; x < ow; ++x) {
      const int x0 = 2 * x;
      const int x1 = std::min(x0 + 1, w - 1);
      out[static_cast<std::size_t>(y) * ow + x] =
          0.25 * ((img(x0, y0) + img(x1, y0)) + (img(x0, y1) + img(x1, y1)));
    }
  }
  return GrayImage(ow, oh, std::move(out));
}

Pyramid build_pyramid(const GrayImage& img, int t) {
  const int n = pyramid_depth(img.height(), img.width(), t);
  Pyramid pyr;
  pyr.t = t;
  pyr.layers.reserve(n);
  pyr.layers.push_back(img);
  for (int l = 1; l < n; ++l) {
    const GrayImage& prev = pyr.layers.back();
    if ((prev.width() + 1) / 2 < GrayImage::kMinSide ||
        (prev.height() + 1) / 2 < GrayImage::kMinSide) {
      throw InvalidArgument("build_pyramid: t=" + std::to_string(t) +
                            " produces layers below the 4x4 minimum");
    }
    pyr.layers.push_back(downsample_2x(prev));
  }
  return pyr;
}

double layer_to_base(double coord, int layer) {
  const double f = static_cast<double>(1 << layer);
  return f * (coord + 0.5) - 0.5;
}

}  // namespace soagdd
