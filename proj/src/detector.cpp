#include "soagdd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soagdd/convolve.hpp"
#include "soagdd/parallel.hpp"

namespace soagdd {
namespace {

// Maximum over the (2r+1)^2 window clipped to the image, via two 1D passes.
Plane window_max(const Plane& in, int r) {
  const int w = in.width();
  const int h = in.height();
  Plane rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = in(x, y);
      for (int i = std::max(0, x - r); i <= std::min(w - 1, x + r); ++i) m = std::max(m, in(i, y));
      rows(x, y) = m;
    }
  }
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m = rows(x, y);
      for (int j = std::max(0, y - r); j <= std::min(h - 1, y + r); ++j) m = std::max(m, rows(x, j));
      out(x, y) = m;
    }
  }
  return out;
}

bool unique_in_window(const Plane& p, int x, int y, int r, double v) {
  int count = 0;
  for (int j = y - r; j <= y + r; ++j) {
    for (int i = x - r; i <= x + r; ++i) {
      if (p(i, j) == v && ++count > 1) return false;
    }
  }
  return count == 1;
}

}  // namespace

void DetectorParams::validate() const {
  bank.validate();
  if (bank.scale_count() < 2) {
    throw InvalidArgument("DetectorParams: scale-space extrema need at least 2 scales");
  }
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw InvalidArgument("DetectorParams: threshold must be finite and >= 0");
  }
  if (pyramid_t < 0) throw InvalidArgument("DetectorParams: pyramid t must be >= 0");
}

MeasureStack::MeasureStack(int scales, int anisotropies, int width, int height)
    : scales_(scales),
      anisotropies_(anisotropies),
      width_(width),
      height_(height),
      eta_(static_cast<std::size_t>(scales) * anisotropies, Plane(width, height)),
      eta_max_(scales, Plane(width, height)),
      argmax_(scales, std::vector<int>(static_cast<std::size_t>(width) * height, 0)) {}

void MeasureStack::reduce_anisotropy() {
  for (int s = 0; s < scales_; ++s) {
    Plane& mx = eta_max_[s];
    std::vector<int>& am = argmax_[s];
    const auto first = eta(s, 0).pixels();
    std::copy(first.begin(), first.end(), mx.pixels().begin());
    std::fill(am.begin(), am.end(), 0);
    for (int a = 1; a < anisotropies_; ++a) {
      const auto e = eta(s, a).pixels();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > mx.pixels()[i]) {
          mx.pixels()[i] = e[i];
          am[i] = a;
        }
      }
    }
  }
}

MeasureStack blob_measure(const ResponseStack& stack, const FilterBank& bank) {
  if (stack.scales() != bank.scale_count() || stack.anisotropies() != bank.anisotropy_count() ||
      stack.orientations() != bank.orientations) {
    throw InvalidArgument("blob_measure: response stack does not match the filter bank");
  }
  const int S = stack.scales();
  const int A = stack.anisotropies();
  const int K = stack.orientations();
  MeasureStack m(S, A, stack.width(), stack.height());
  for (int s = 0; s < S; ++s) {
    const double s2 = bank.sigmas[s] * bank.sigmas[s];
    for (int a = 0; a < A; ++a) {
      auto out = m.eta(s, a).pixels();
      for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (int k = 0; k < K; ++k) acc += s2 * stack.slice(s, a, k).pixels()[i];
        out[i] = std::abs(acc);
      }
    }
  }
  m.reduce_anisotropy();
  return m;
}

MeasureStack blob_measure_direct(const GrayImage& img, const KernelBank& kernels,
                                 int anisotropy_count) {
  const FilterBank& bank = kernels.bank();
  if (anisotropy_count < 1 || anisotropy_count > bank.anisotropy_count()) {
    throw InvalidArgument("blob_measure_direct: anisotropy count out of range");
  }
  const int S = bank.scale_count();
  const int A = anisotropy_count;
  MeasureStack m(S, A, img.width(), img.height());
  parallel_for(static_cast<std::size_t>(S) * A, [&](std::size_t i) {
    const int s = static_cast<int>(i / A);
    const int a = static_cast<int>(i % A);
    Plane resp = convolve(img, kernels.orientation_sum(s, a));
    for (double& v : resp.pixels()) v = std::abs(v);
    m.eta(s, a) = std::move(resp);
  });
  m.reduce_anisotropy();
  return m;
}

std::vector<BlobCandidate> scale_space_extrema(const MeasureStack& m, const DetectorParams& p) {
  const int S = m.scales();
  if (S < 2) throw InvalidArgument("scale_space_extrema: need at least 2 scales");
  const int r = p.kWindowRadius;
  const int w = m.width();
  const int h = m.height();

  std::vector<Plane> wmax(S);
  parallel_for(S, [&](std::size_t s) { wmax[s] = window_max(m.eta_max(static_cast<int>(s)), r); });

  std::vector<BlobCandidate> out;
  for (int s = 0; s < S; ++s) {
    const Plane& e = m.eta_max(s);
    for (int y = r; y < h - r; ++y) {
      for (int x = r; x < w - r; ++x) {
        const double v = e(x, y);
        if (v != wmax[s](x, y)) continue;
        if (s > 0 && !(v > wmax[s - 1](x, y))) continue;
        if (s + 1 < S && !(v > wmax[s + 1](x, y))) continue;
        if (!unique_in_window(e, x, y, r, v)) continue;
        out.push_back({0, x, y, s, m.argmax(s, x, y), v});
      }
    }
  }
  return out;
}

std::vector<double> directional_responses(const Plane& layer, const KernelBank& kernels, int s,
                                          int x, int y) {
  const FilterBank& bank = kernels.bank();
  const int A = bank.anisotropy_count();
  const int K = bank.orientations;
  std::vector<double> out(static_cast<std::size_t>(A) * K);
  for (int a = 0; a < A; ++a) {
    for (int k = 0; k < K; ++k) {
      out[static_cast<std::size_t>(a) * K + k] = convolve_at(layer, kernels.kernel(s, a, k), x, y);
    }
  }
  return out;
}

std::vector<double> directional_responses(const ResponseStack& stack, int s, int x, int y) {
  const int A = stack.anisotropies();
  const int K = stack.orientations();
  std::vector<double> out(static_cast<std::size_t>(A) * K);
  for (int a = 0; a < A; ++a) {
    for (int k = 0; k < K; ++k) out[static_cast<std::size_t>(a) * K + k] = stack.at(s, a, k, x, y);
  }
  return out;
}

int select_anisotropy(std::span<const double> responses, int orientations) {
  if (orientations < 1 || responses.empty() || responses.size() % orientations != 0) {
    throw InvalidArgument("select_anisotropy: response count is not a multiple of K");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < responses.size(); ++i) {
    if (std::abs(responses[i]) > std::abs(responses[best])) best = i;
  }
  return static_cast<int>(best / orientations);
}

ShapeEstimate estimate_shape(std::span<const double> responses, int s, int a,
                             const FilterBank& bank) {
  const int K = bank.orientations;
  if (s < 0 || s >= bank.scale_count() || a < 0 || a >= bank.anisotropy_count()) {
    throw InvalidArgument("estimate_shape: candidate indices out of range");
  }
  if (responses.size() != static_cast<std::size_t>(bank.anisotropy_count()) * K) {
    throw InvalidArgument("estimate_shape: response count does not match the bank");
  }
  const auto at_a = responses.subspan(static_cast<std::size_t>(a) * K, K);
  int best = 0;
  double hi = std::abs(at_a[0]);
  double lo = hi;
  for (int k = 1; k < K; ++k) {
    const double v = std::abs(at_a[k]);
    if (v > hi) {
      hi = v;
      best = k;
    }
    lo = std::min(lo, v);
  }
  ShapeEstimate shape;
  shape.direction = best;
  shape.orientation = bank.theta(best);
  shape.short_axis = bank.sigmas[s];
  shape.isotropic = hi <= 0.0 || (hi - lo) < kIsotropyTolerance * hi;
  shape.long_axis = shape.isotropic ? shape.short_axis : bank.rhos[a] * bank.sigmas[s];
  return shape;
}

ShapeEstimate estimate_shape(const ResponseStack& stack, const BlobCandidate& c,
                             const FilterBank& bank) {
  if (c.x < 0 || c.y < 0 || c.x >= stack.width() || c.y >= stack.height() || c.s < 0 ||
      c.s >= stack.scales()) {
    throw InvalidArgument("estimate_shape: candidate outside the response stack");
  }
  const std::vector<double> resp = directional_responses(stack, c.s, c.x, c.y);
  return estimate_shape(resp, c.s, c.a, bank);
}

bool layer_supports_bank(const GrayImage& layer, const FilterBank& bank) {
  return bank.max_kernel_side() <= 2 * std::min(layer.width(), layer.height());
}

std::vector<Blob> detect_blobs(const GrayImage& img, const DetectorParams& p) {
  p.validate();
  return detect_blobs(img, p, KernelBank(p.bank));
}

std::vector<Blob> detect_blobs(const GrayImage& img, const DetectorParams& p,
                               const KernelBank& kernels) {
  p.validate();
  const FilterBank& bank = kernels.bank();
  if (bank.sigmas != p.bank.sigmas || bank.rhos != p.bank.rhos ||
      bank.orientations != p.bank.orientations) {
    throw InvalidArgument("detect_blobs: kernel bank does not match the detector parameters");
  }
  const Pyramid pyr = build_pyramid(img, p.pyramid_t);
  const int K = bank.orientations;
  const bool base = p.selection == ScaleSelection::BaseAnisotropy;

  std::vector<Blob> blobs;
  for (int l = 0; l < pyr.size(); ++l) {
    const GrayImage& layer = pyr.layers[l];
    if (!layer_supports_bank(layer, bank)) break;

    const MeasureStack m = blob_measure_direct(layer, kernels, base ? 1 : bank.anisotropy_count());
    std::vector<BlobCandidate> cands = scale_space_extrema(m, p);
    // A lowest-scale maximum on a coarser layer is a structure smaller than
    // that layer's filters; the finer layer already covers its scale.
    std::erase_if(cands, [&](const BlobCandidate& c) {
      return !(c.eta > p.threshold) || (l > 0 && c.s == 0);
    });

    std::vector<Blob> found(cands.size());
    parallel_for(cands.size(), [&](std::size_t i) {
      const BlobCandidate& c = cands[i];
      const std::vector<double> resp = directional_responses(layer.plane(), kernels, c.s, c.x, c.y);
      const int a = base ? select_anisotropy(resp, K) : c.a;
      const ShapeEstimate shape = estimate_shape(resp, c.s, a, bank);
      const double f = static_cast<double>(1 << l);
      found[i] = Blob{layer_to_base(c.x, l), layer_to_base(c.y, l), f * shape.short_axis,
                      f * shape.long_axis,   shape.orientation,      c.eta,
                      l};
    });
    blobs.insert(blobs.end(), found.begin(), found.end());
  }
  return deduplicate_layers(std::move(blobs));
}

}  // namespace soagdd
