#pragma once

#include <span>
#include <vector>

#include "soagdd/blob.hpp"
#include "soagdd/image.hpp"
#include "soagdd/kernels.hpp"
#include "soagdd/pyramid.hpp"
#include "soagdd/response.hpp"

namespace soagdd {

inline constexpr double kDefaultBlobThreshold = 223.0;

/// How the anisotropy dimension enters localisation and scale selection.
enum class ScaleSelection {
  /// Extremum test on the least anisotropic measure (rho_1). The anisotropy
  /// is then chosen from the per-direction responses at the detected pixel.
  BaseAnisotropy,
  /// Extremum test on max_a eta(s, a); the arg-max anisotropy is carried to
  /// shape estimation.
  MaxOverAnisotropy,
};

struct DetectorParams {
  static constexpr int kWindowRadius = 3;  // 7x7 spatial neighbourhood

  FilterBank bank = FilterBank::defaults();
  int pyramid_t = kDefaultPyramidT;
  double threshold = kDefaultBlobThreshold;
  ScaleSelection selection = ScaleSelection::BaseAnisotropy;

  void validate() const;
};

/// Blob measure eta(s, a) = | sum_k sigma_s^2 L(s, a, k) | for every pixel,
/// plus its maximum over anisotropies per scale.
class MeasureStack {
 public:
  MeasureStack(int scales, int anisotropies, int width, int height);

  int scales() const { return scales_; }
  int anisotropies() const { return anisotropies_; }
  int width() const { return width_; }
  int height() const { return height_; }

  const Plane& eta(int s, int a) const { return eta_[static_cast<std::size_t>(s) * anisotropies_ + a]; }
  Plane& eta(int s, int a) { return eta_[static_cast<std::size_t>(s) * anisotropies_ + a]; }
  const Plane& eta_max(int s) const { return eta_max_[s]; }
  int argmax(int s, int x, int y) const {
    return argmax_[s][static_cast<std::size_t>(y) * width_ + x];
  }

  /// Recomputes eta_max and argmax from eta. Ties go to the smaller a.
  void reduce_anisotropy();

 private:
  int scales_;
  int anisotropies_;
  int width_;
  int height_;
  std::vector<Plane> eta_;
  std::vector<Plane> eta_max_;
  std::vector<std::vector<int>> argmax_;
};

MeasureStack blob_measure(const ResponseStack& stack, const FilterBank& bank);

/// Same measure computed without materialising the response stack, by
/// convolving with the pre-summed orientation kernels. Only anisotropies
/// [0, anisotropy_count) are evaluated.
MeasureStack blob_measure_direct(const GrayImage& img, const KernelBank& kernels,
                                 int anisotropy_count);

struct BlobCandidate {
  int layer = 0;
  int x = 0;
  int y = 0;
  int s = 0;
  int a = 0;
  double eta = 0.0;

  friend bool operator==(const BlobCandidate&, const BlobCandidate&) = default;
};

/// Pixels whose eta_max is the unique maximum of the 7x7 window at its scale
/// and strictly above the 7x7 window maxima of the existing neighbour
/// scales. Pixels within 3 of the border are never candidates. Output is in
/// (s, y, x) order with layer 0.
std::vector<BlobCandidate> scale_space_extrema(const MeasureStack& m, const DetectorParams& p);

struct ShapeEstimate {
  double orientation = 0.0;
  double short_axis = 0.0;
  double long_axis = 0.0;
  bool isotropic = false;
  int direction = 0;  // winning orientation index k
};

/// L(s, a, k) at one pixel for every a and k, stored a-major (a * K + k).
std::vector<double> directional_responses(const Plane& layer, const KernelBank& kernels, int s,
                                          int x, int y);
std::vector<double> directional_responses(const ResponseStack& stack, int s, int x, int y);

/// Anisotropy index whose strongest directional response is largest,
/// ties toward smaller a.
int select_anisotropy(std::span<const double> responses, int orientations);

/// Relative spread (max - min) / max of |L| over orientations below which a
/// blob counts as isotropic. Noisy round blobs measure about 0.05, a 1:1.5
/// ellipse about 0.55.
inline constexpr double kIsotropyTolerance = 0.15;

/// Short-axis direction = orientation with the largest |L| at (s, a); axes
/// sigma_s and rho_a sigma_s, or both sigma_s for isotropic blobs.
ShapeEstimate estimate_shape(std::span<const double> responses, int s, int a,
                             const FilterBank& bank);
ShapeEstimate estimate_shape(const ResponseStack& stack, const BlobCandidate& c,
                             const FilterBank& bank);

/// The full detector: pyramid, measure, scale-space extrema, threshold,
/// shape, cross-layer deduplication. Sorted by descending response.
/// On layers above the first, maxima at the smallest scale are dropped:
/// the finer layer covers that scale.
std::vector<Blob> detect_blobs(const GrayImage& img, const DetectorParams& p);
std::vector<Blob> detect_blobs(const GrayImage& img, const DetectorParams& p,
                               const KernelBank& kernels);

/// Whether a pyramid layer is large enough for every kernel of the bank.
bool layer_supports_bank(const GrayImage& layer, const FilterBank& bank);

}  // namespace soagdd
