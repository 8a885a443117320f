#include "soagdd/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "soagdd/parallel.hpp"

namespace soagdd {
namespace {

double sample_bilinear(const GrayImage& img, double x, double y) {
  const double cx = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  const double cy = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(cx));
  const int y0 = static_cast<int>(std::floor(cy));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = cx - x0;
  const double fy = cy - y0;
  const double top = (1.0 - fx) * img(x0, y0) + fx * img(x1, y0);
  const double bottom = (1.0 - fx) * img(x0, y1) + fx * img(x1, y1);
  return (1.0 - fy) * top + fy * bottom;
}

}  // namespace

Descriptor describe(const GrayImage& img, const Blob& b) {
  const double eu = kDescriptorExtent * b.short_axis;
  const double ev = kDescriptorExtent * b.long_axis;
  const double reach = std::max(eu, ev);
  if (b.cx + reach < 0.0 || b.cy + reach < 0.0 || b.cx - reach > img.width() - 1 ||
      b.cy - reach > img.height() - 1) {
    throw InvalidArgument("describe: blob support lies outside the image");
  }
  const double c = std::cos(b.orientation);
  const double s = std::sin(b.orientation);
  constexpr int n = kDescriptorGrid;

  Descriptor d{};
  double mean = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = ev * ((2.0 * j + 1.0) / n - 1.0);
    for (int i = 0; i < n; ++i) {
      const double u = eu * ((2.0 * i + 1.0) / n - 1.0);
      const double x = b.cx + u * c - v * s;
      const double y = b.cy + u * s + v * c;
      d[j * n + i] = sample_bilinear(img, x, y);
      mean += d[j * n + i];
    }
  }
  mean /= d.size();
  double norm2 = 0.0;
  for (double& v : d) {
    v -= mean;
    norm2 += v * v;
  }
  const double norm = std::sqrt(norm2);
  if (norm < 1e-9) {
    d.fill(0.0);
  } else {
    for (double& v : d) v /= norm;
  }
  return d;
}

std::vector<Descriptor> describe_all(const GrayImage& img, const std::vector<Blob>& blobs) {
  std::vector<Descriptor> out(blobs.size());
  parallel_for(blobs.size(), [&](std::size_t i) { out[i] = describe(img, blobs[i]); });
  return out;
}

double descriptor_distance(const Descriptor& a, const Descriptor& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::vector<MatchPair> match_descriptors(const std::vector<Descriptor>& a,
                                         const std::vector<Descriptor>& b, double ratio_max) {
  if (!(ratio_max > 0.0 && ratio_max <= 1.0)) {
    throw InvalidArgument("match_descriptors: ratio must lie in (0, 1]");
  }
  std::vector<MatchPair> proposals;
  if (b.empty()) return proposals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = descriptor_distance(a[i], b[j]);
      if (d < best) {
        second = best;
        best = d;
        best_j = static_cast<int>(j);
      } else if (d < second) {
        second = d;
      }
    }
    if (b.size() < 2) {
      if (best < 0.1) proposals.push_back({static_cast<int>(i), best_j, best, 0.0});
      continue;
    }
    const double ratio = second > 0.0 ? best / second : 1.0;
    if (ratio <= ratio_max) proposals.push_back({static_cast<int>(i), best_j, best, ratio});
  }

  // One-to-one on the B side: the smallest distance claims each B index.
  std::vector<int> owner(b.size(), -1);
  for (std::size_t p = 0; p < proposals.size(); ++p) {
    int& o = owner[proposals[p].index_b];
    if (o < 0 || proposals[p].distance < proposals[o].distance) o = static_cast<int>(p);
  }
  std::vector<MatchPair> out;
  for (std::size_t p = 0; p < proposals.size(); ++p) {
    if (owner[proposals[p].index_b] == static_cast<int>(p)) out.push_back(proposals[p]);
  }
  return out;
}

double homography_consistency(const std::vector<MatchPair>& matches, const std::vector<Blob>& a,
                              const std::vector<Blob>& b, const Homography& h, double tol_px) {
  if (matches.empty()) return 0.0;
  int good = 0;
  for (const MatchPair& m : matches) {
    const auto [x, y] = apply_homography(h, a[m.index_a].cx, a[m.index_a].cy);
    if (std::hypot(x - b[m.index_b].cx, y - b[m.index_b].cy) <= tol_px) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(matches.size());
}

std::string format_matches(const std::vector<MatchPair>& matches) {
  std::string out;
  char buf[160];
  for (const MatchPair& m : matches) {
    std::snprintf(buf, sizeof(buf), "{\"indexA\":%d,\"indexB\":%d,\"distance\":%.6f,\"ratio\":%.6f}\n",
                  m.index_a, m.index_b, m.distance, m.ratio);
    out += buf;
  }
  return out;
}

}  // namespace soagdd
