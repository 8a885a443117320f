#include "soagdd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "soagdd/convolve.hpp"

namespace soagdd {

double NormalStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms in (0, 1].
  auto uniform = [this] { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; };
  const double u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(angle);
  have_spare_ = true;
  return mag * std::cos(angle);
}

void SceneSpec::validate() const {
  if (width < GrayImage::kMinSide || height < GrayImage::kMinSide) {
    throw InvalidArgument("scene: image smaller than 4x4");
  }
  if (!std::isfinite(background) || !(noise_std >= 0.0)) {
    throw InvalidArgument("scene: invalid background or noise level");
  }
  if (!(texture_std >= 0.0) || !(texture_scale > 0.0)) {
    throw InvalidArgument("scene: texture needs texture_std >= 0 and texture_scale > 0");
  }
  for (const TruthBlob& b : blobs) {
    if (!(b.sigma_minor > 0.0) || !(b.sigma_major >= b.sigma_minor)) {
      throw InvalidArgument("scene: blob needs sigma_major >= sigma_minor > 0");
    }
    if (b.amplitude == 0.0 || !std::isfinite(b.amplitude)) {
      throw InvalidArgument("scene: blob amplitude must be non-zero");
    }
  }
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    for (std::size_t j = i + 1; j < blobs.size(); ++j) {
      const double d = std::hypot(blobs[i].cx - blobs[j].cx, blobs[i].cy - blobs[j].cy);
      if (d < 3.0 * (blobs[i].sigma_major + blobs[j].sigma_major)) {
        throw InvalidArgument("scene: blobs " + std::to_string(i) + " and " + std::to_string(j) +
                              " are closer than 3x their summed major sigmas");
      }
    }
  }
}

Scene render_blob_scene(const SceneSpec& spec) {
  spec.validate();
  Plane img(spec.width, spec.height, spec.background);
  if (spec.texture_std > 0.0) {
    // Separate stream so the pixel noise is the same with or without texture.
    NormalStream tex(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    Plane white(spec.width, spec.height);
    for (double& v : white.pixels()) v = tex.next();
    const Plane smooth = gaussian_blur(white, spec.texture_scale);
    double rms = 0.0;
    for (double v : smooth.pixels()) rms += v * v;
    rms = std::sqrt(rms / static_cast<double>(smooth.size()));
    if (rms > 0.0) {
      for (std::size_t i = 0; i < img.size(); ++i) {
        img.pixels()[i] += spec.texture_std * smooth.pixels()[i] / rms;
      }
    }
  }
  for (const TruthBlob& b : spec.blobs) {
    const double c = std::cos(b.orientation);
    const double s = std::sin(b.orientation);
    const double im = 1.0 / (2.0 * b.sigma_minor * b.sigma_minor);
    const double iM = 1.0 / (2.0 * b.sigma_major * b.sigma_major);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const double dx = x - b.cx;
        const double dy = y - b.cy;
        const double u = dx * c + dy * s;
        const double v = -dx * s + dy * c;
        img(x, y) += b.amplitude * std::exp(-(u * u * im + v * v * iM));
      }
    }
  }
  if (spec.noise_std > 0.0) {
    NormalStream noise(spec.seed);
    for (double& v : img.pixels()) v += spec.noise_std * noise.next();
  }
  for (double& v : img.pixels()) v = std::clamp(v, 0.0, 255.0);
  return Scene{GrayImage(std::move(img)), spec.blobs};
}

EvalReport evaluate_detections(const std::vector<Blob>& dets, const std::vector<TruthBlob>& truth,
                               double tol_px) {
  if (!(tol_px > 0.0)) throw InvalidArgument("evaluate_detections: tolerance must be positive");

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t d = 0; d < dets.size(); ++d) {
      const double dist = std::hypot(dets[d].cx - truth[t].cx, dets[d].cy - truth[t].cy);
      if (dist <= tol_px) pairs.emplace_back(dist, t, d);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> truth_used(truth.size(), false);
  std::vector<bool> det_used(dets.size(), false);
  EvalReport r;
  double center_sum = 0.0;
  double orient_sum = 0.0;
  double ratio_sum = 0.0;
  int orient_count = 0;
  for (const auto& [dist, t, d] : pairs) {
    if (truth_used[t] || det_used[d]) continue;
    truth_used[t] = det_used[d] = true;
    ++r.matched;
    center_sum += dist;
    const TruthBlob& tb = truth[t];
    const Blob& db = dets[d];
    const double truth_ratio = tb.sigma_major / tb.sigma_minor;
    const double det_ratio = db.long_axis / db.short_axis;
    ratio_sum += std::abs(det_ratio - truth_ratio) / truth_ratio;
    if (!tb.isotropic()) {
      double diff = std::fmod(std::abs(db.orientation - tb.orientation), std::numbers::pi);
      orient_sum += std::min(diff, std::numbers::pi - diff);
      ++orient_count;
    }
  }
  r.missed = static_cast<int>(truth.size()) - r.matched;
  r.false_positives = static_cast<int>(dets.size()) - r.matched;
  if (r.matched > 0) {
    r.mean_center_error = center_sum / r.matched;
    r.mean_axis_ratio_error = ratio_sum / r.matched;
  }
  if (orient_count > 0) r.mean_orientation_error = orient_sum / orient_count;
  const std::size_t denom = std::min(dets.size(), truth.size());
  if (denom > 0) r.repeatability = static_cast<double>(r.matched) / static_cast<double>(denom);
  return r;
}

Homography identity_homography() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Homography invert_homography(const Homography& m) {
  const double a = m[0], b = m[1], c = m[2];
  const double d = m[3], e = m[4], f = m[5];
  const double g = m[6], h = m[7], i = m[8];
  const double A = e * i - f * h;
  const double B = -(d * i - f * g);
  const double C = d * h - e * g;
  const double det = a * A + b * B + c * C;
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  if (!(std::abs(det) > 1e-12 * scale * scale * scale)) {
    throw InvalidArgument("homography is singular");
  }
  const double inv = 1.0 / det;
  return {A * inv, -(b * i - c * h) * inv, (b * f - c * e) * inv,
          B * inv, (a * i - c * g) * inv,  -(a * f - c * d) * inv,
          C * inv, -(a * h - b * g) * inv, (a * e - b * d) * inv};
}

Homography compose(const Homography& outer, const Homography& inner) {
  Homography out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += outer[r * 3 + k] * inner[k * 3 + c];
      out[r * 3 + c] = acc;
    }
  }
  return out;
}

Homography similarity_about(double angle, double scale, double cx, double cy, double tx,
                            double ty) {
  const double c = scale * std::cos(angle);
  const double s = scale * std::sin(angle);
  // p' = R (p - centre) + centre + t
  return {c, -s, cx + tx - (c * cx - s * cy), s, c, cy + ty - (s * cx + c * cy), 0, 0, 1};
}

std::array<double, 2> apply_homography(const Homography& h, double x, double y) {
  const double w = h[6] * x + h[7] * y + h[8];
  return {(h[0] * x + h[1] * y + h[2]) / w, (h[3] * x + h[4] * y + h[5]) / w};
}

GrayImage warp_image(const GrayImage& img, const Homography& h) {
  const Homography inv = invert_homography(h);
  const int w = img.width();
  const int ht = img.height();

  std::vector<double> sorted(img.pixels().begin(), img.pixels().end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  std::vector<double> out(static_cast<std::size_t>(w) * ht);
  for (int y = 0; y < ht; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto [sx, sy] = apply_homography(inv, x, y);
      double v = median;
      if (sx >= 0.0 && sy >= 0.0 && sx <= w - 1 && sy <= ht - 1) {
        const int x0 = static_cast<int>(std::floor(sx));
        const int y0 = static_cast<int>(std::floor(sy));
        const int x1 = std::min(x0 + 1, w - 1);
        const int y1 = std::min(y0 + 1, ht - 1);
        const double fx = sx - x0;
        const double fy = sy - y0;
        const double top = (1.0 - fx) * img(x0, y0) + fx * img(x1, y0);
        const double bottom = (1.0 - fx) * img(x0, y1) + fx * img(x1, y1);
        v = (1.0 - fy) * top + fy * bottom;
      }
      out[static_cast<std::size_t>(y) * w + x] = v;
    }
  }
  return GrayImage(w, ht, std::move(out));
}

double repeatability(const std::vector<Blob>& dets_a, const std::vector<Blob>& dets_b,
                     const Homography& h, double eps_px, int width_b, int height_b) {
  if (!(eps_px > 0.0)) throw InvalidArgument("repeatability: eps must be positive");
  if (dets_a.empty()) return 0.0;
  std::size_t inside = 0;
  std::size_t repeated = 0;
  for (const Blob& a : dets_a) {
    const auto [x, y] = apply_homography(h, a.cx, a.cy);
    if (x < 0.0 || y < 0.0 || x > width_b - 1 || y > height_b - 1) continue;
    ++inside;
    for (const Blob& b : dets_b) {
      if (std::hypot(b.cx - x, b.cy - y) <= eps_px) {
        ++repeated;
        break;
      }
    }
  }
  const std::size_t denom = std::min(dets_a.size(), inside);
  return denom == 0 ? 0.0 : static_cast<double>(repeated) / static_cast<double>(denom);
}

}  // namespace soagdd
