#include "soagdd/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace soagdd {
namespace {

void check_support(const Plane& img, int side) {
  if (img.empty()) throw InvalidArgument("convolve: empty image");
  if (side > 2 * std::min(img.width(), img.height())) {
    throw InvalidArgument("convolve: kernel side " + std::to_string(side) +
                          " exceeds twice the smaller image side");
  }
}

// Kernel reversed so the convolution becomes a correlation over the padded
// image: out(x, y) = sum_{i,j} flipped(i, j) * padded(x + i, y + j).
std::vector<double> flipped(const KernelGrid& k) {
  std::vector<double> w(k.weights().rbegin(), k.weights().rend());
  return w;
}

// 1D convolution of `src` with symmetric taps along x (horizontal = true) or y.
Plane blur_axis(const Plane& src, const std::vector<double>& taps, bool horizontal) {
  const int r = static_cast<int>(taps.size() / 2);
  const int w = src.width();
  const int h = src.height();
  Plane out(w, h);
  std::vector<double> line;
  const int n = horizontal ? w : h;
  const int lines = horizontal ? h : w;
  line.resize(static_cast<std::size_t>(n) + 2 * r);
  for (int l = 0; l < lines; ++l) {
    for (int i = -r; i < n + r; ++i) {
      const int j = reflect_index(i, n);
      line[i + r] = horizontal ? src(j, l) : src(l, j);
    }
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int t = 0; t <= 2 * r; ++t) acc += taps[t] * line[i + t];
      if (horizontal) {
        out(i, l) = acc;
      } else {
        out(l, i) = acc;
      }
    }
  }
  return out;
}

}  // namespace

int reflect_index(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

Plane pad_reflect(const Plane& img, int pad) {
  const int pw = img.width() + 2 * pad;
  const int ph = img.height() + 2 * pad;
  Plane out(pw, ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = reflect_index(y - pad, img.height());
    const double* src = img.row(sy);
    double* dst = out.row(y);
    for (int x = 0; x < pw; ++x) dst[x] = src[reflect_index(x - pad, img.width())];
  }
  return out;
}

Plane convolve(const Plane& img, const KernelGrid& k) {
  check_support(img, k.side());
  const int r = k.radius();
  const int side = k.side();
  const int w = img.width();
  const int h = img.height();
  const Plane padded = pad_reflect(img, r);
  const std::vector<double> kf = flipped(k);

  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    double* acc = out.row(y);
    for (int j = 0; j < side; ++j) {
      const double* src_row = padded.row(y + j);
      const double* krow = kf.data() + static_cast<std::size_t>(j) * side;
      for (int i = 0; i < side; ++i) {
        const double wgt = krow[i];
        const double* src = src_row + i;
        for (int x = 0; x < w; ++x) acc[x] += wgt * src[x];
      }
    }
  }
  return out;
}

double convolve_at(const Plane& img, const KernelGrid& k, int x, int y) {
  check_support(img, k.side());
  const int r = k.radius();
  const int side = k.side();
  const std::vector<double>& wts = k.weights();
  double acc = 0.0;
  for (int j = 0; j < side; ++j) {
    const int sy = reflect_index(y + j - r, img.height());
    const double* row = img.row(sy);
    for (int i = 0; i < side; ++i) {
      // flipped(j, i) == original(side-1-j, side-1-i)
      const double wgt =
          wts[static_cast<std::size_t>(side - 1 - j) * side + static_cast<std::size_t>(side - 1 - i)];
      acc += wgt * row[reflect_index(x + i - r, img.width())];
    }
  }
  return acc;
}

std::vector<double> gaussian_taps(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("gaussian_taps: sigma must be positive");
  }
  const int r = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> taps(2 * static_cast<std::size_t>(r) + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    taps[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += taps[i + r];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Plane gaussian_blur(const Plane& img, double sigma) {
  const std::vector<double> taps = gaussian_taps(sigma);
  check_support(img, static_cast<int>(taps.size()));
  return blur_axis(blur_axis(img, taps, true), taps, false);
}

}  // namespace soagdd
