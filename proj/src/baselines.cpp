#include "soagdd/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "soagdd/convolve.hpp"
#include "soagdd/parallel.hpp"

namespace soagdd {
namespace {

// Central-difference second derivatives with mirror borders.
struct SecondDerivatives {
  double xx, yy, xy;
};

SecondDerivatives second_derivatives(const Plane& p, int x, int y) {
  const int w = p.width();
  const int h = p.height();
  const int xm = reflect_index(x - 1, w);
  const int xp = reflect_index(x + 1, w);
  const int ym = reflect_index(y - 1, h);
  const int yp = reflect_index(y + 1, h);
  const double c = p(x, y);
  return {p(xp, y) - 2.0 * c + p(xm, y), p(x, yp) - 2.0 * c + p(x, ym),
          0.25 * (p(xp, yp) - p(xm, yp) - p(xp, ym) + p(xm, ym))};
}

bool strict_max_3x3(const Plane& p, int x, int y, double v) {
  for (int j = -1; j <= 1; ++j) {
    for (int i = -1; i <= 1; ++i) {
      if ((i != 0 || j != 0) && !(v > std::abs(p(x + i, y + j)))) return false;
    }
  }
  return true;
}

bool supports_sigma(const Plane& img, double sigma) {
  return 2 * static_cast<int>(std::ceil(4.0 * sigma)) + 1 <= 2 * std::min(img.width(), img.height());
}

}  // namespace

HessianResponse hessian_response(const Plane& img, double sigma) {
  const Plane smooth = gaussian_blur(img, sigma);
  const int w = img.width();
  const int h = img.height();
  HessianResponse r{sigma, Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  const double s4 = sigma * sigma * sigma * sigma;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const SecondDerivatives d = second_derivatives(smooth, x, y);
      r.xx(x, y) = d.xx;
      r.yy(x, y) = d.yy;
      r.xy(x, y) = d.xy;
      r.det(x, y) = s4 * (d.xx * d.yy - d.xy * d.xy);
    }
  }
  return r;
}

void HessianParams::validate() const {
  if (sigmas.empty()) throw InvalidArgument("hessian: empty scale list");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0) || (i > 0 && !(sigmas[i] > sigmas[i - 1]))) {
      throw InvalidArgument("hessian: scales must be positive and strictly increasing");
    }
  }
  if (!(threshold >= 0.0)) throw InvalidArgument("hessian: threshold must be >= 0");
}

HessianParams HessianParams::defaults() {
  HessianParams p;
  for (int v = 2; v <= 16; ++v) p.sigmas.push_back(std::sqrt(static_cast<double>(v)));
  return p;
}

std::vector<Blob> hessian_det_detect(const GrayImage& img, const HessianParams& p) {
  p.validate();
  const int n = static_cast<int>(p.sigmas.size());
  std::vector<Plane> absdet(n);
  parallel_for(n, [&](std::size_t i) {
    Plane d = hessian_response(img.plane(), p.sigmas[i]).det;
    for (double& v : d.pixels()) v = std::abs(v);
    absdet[i] = std::move(d);
  });

  std::vector<Blob> blobs;
  const int w = img.width();
  const int h = img.height();
  for (int i = 0; i < n; ++i) {
    for (int y = 1; y < h - 1; ++y) {
      for (int x = 1; x < w - 1; ++x) {
        const double v = absdet[i](x, y);
        if (!(v > p.threshold)) continue;
        if (i > 0 && !(v > absdet[i - 1](x, y))) continue;
        if (i + 1 < n && !(v > absdet[i + 1](x, y))) continue;
        if (!strict_max_3x3(absdet[i], x, y, v)) continue;
        blobs.push_back({static_cast<double>(x), static_cast<double>(y), p.sigmas[i], p.sigmas[i],
                         0.0, v, 0});
      }
    }
  }
  sort_blobs(blobs);
  return blobs;
}

void DoGParams::validate() const {
  if (levels < 3) throw InvalidArgument("dog: need at least 3 levels");
  if (!(k > 1.0)) throw InvalidArgument("dog: k must exceed 1");
  if (!(varsigma > 1.0)) throw InvalidArgument("dog: varsigma must exceed 1");
  if (!(sigma0 > 0.0)) throw InvalidArgument("dog: sigma0 must be positive");
  if (!(threshold >= 0.0)) throw InvalidArgument("dog: threshold must be >= 0");
  if (pyramid_t < 0) throw InvalidArgument("dog: pyramid t must be >= 0");
}

DoGStack build_dog_stack(const Plane& img, const DoGParams& p) {
  p.validate();
  std::vector<Plane> blurred(p.levels + 1);
  parallel_for(blurred.size(), [&](std::size_t i) {
    blurred[i] = gaussian_blur(img, p.level_sigma(static_cast<int>(i)));
  });
  DoGStack stack{{}, p.sigma0, p.k, p.varsigma};
  stack.levels.reserve(p.levels);
  for (int i = 0; i < p.levels; ++i) {
    Plane d = blurred[i + 1];
    const auto lo = blurred[i].pixels();
    auto out = d.pixels();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= lo[j];
    stack.levels.push_back(std::move(d));
  }
  return stack;
}

bool is_edge_like(double dxx, double dyy, double dxy, double varsigma) {
  const double tr = dxx + dyy;
  const double det = dxx * dyy - dxy * dxy;
  if (det <= 0.0) return true;
  return tr * tr / det >= (varsigma + 1.0) * (varsigma + 1.0) / varsigma;
}

std::vector<Blob> dog_detect_octave(const Plane& img, const DoGParams& p) {
  const DoGStack stack = build_dog_stack(img, p);
  const int w = img.width();
  const int h = img.height();
  std::vector<Blob> blobs;
  for (int i = 1; i + 1 < p.levels; ++i) {
    const Plane& d = stack.levels[i];
    for (int y = 1; y < h - 1; ++y) {
      for (int x = 1; x < w - 1; ++x) {
        const double v = std::abs(d(x, y));
        if (!(v > p.threshold)) continue;
        bool is_max = strict_max_3x3(d, x, y, v);
        for (int l = i - 1; is_max && l <= i + 1; l += 2) {
          for (int j = -1; is_max && j <= 1; ++j) {
            for (int ii = -1; is_max && ii <= 1; ++ii) {
              if (!(v > std::abs(stack.levels[l](x + ii, y + j)))) is_max = false;
            }
          }
        }
        if (!is_max) continue;
        const SecondDerivatives dd = second_derivatives(d, x, y);
        if (is_edge_like(dd.xx, dd.yy, dd.xy, p.varsigma)) continue;
        const double sigma = p.level_sigma(i);
        blobs.push_back({static_cast<double>(x), static_cast<double>(y), sigma, sigma, 0.0, v, 0});
      }
    }
  }
  return blobs;
}

std::vector<Blob> dog_detect(const GrayImage& img, const DoGParams& p) {
  p.validate();
  const Pyramid pyr = build_pyramid(img, p.pyramid_t);
  std::vector<Blob> all;
  for (int l = 0; l < pyr.size(); ++l) {
    const Plane& layer = pyr.layers[l].plane();
    if (!supports_sigma(layer, p.level_sigma(p.levels))) break;
    const double f = static_cast<double>(1 << l);
    for (Blob b : dog_detect_octave(layer, p)) {
      b.cx = layer_to_base(b.cx, l);
      b.cy = layer_to_base(b.cy, l);
      b.short_axis *= f;
      b.long_axis *= f;
      b.layer = l;
      all.push_back(b);
    }
  }
  return deduplicate_layers(std::move(all));
}

}  // namespace soagdd
