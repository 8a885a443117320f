#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "soagdd/blob.hpp"
#include "soagdd/image.hpp"

namespace soagdd {

/// Ground-truth anisotropic Gaussian blob.
struct TruthBlob {
  double cx = 0.0;
  double cy = 0.0;
  double sigma_minor = 1.0;
  double sigma_major = 1.0;
  double orientation = 0.0;  // direction of the minor axis, radians
  double amplitude = 100.0;  // peak intensity above background, non-zero

  bool isotropic() const { return sigma_major == sigma_minor; }
};

struct SceneSpec {
  int width = 128;
  int height = 128;
  double background = 20.0;
  double noise_std = 2.0;
  /// Optional smooth background texture: white noise blurred with a
  /// Gaussian of std texture_scale, rescaled to RMS texture_std. Gives
  /// descriptors something to tell blobs apart; 0 disables it.
  double texture_std = 0.0;
  double texture_scale = 6.0;
  std::uint64_t seed = 0;
  std::vector<TruthBlob> blobs;

  /// Size, blob shape, and pairwise separation >= 3 (major_i + major_j).
  void validate() const;
};

struct Scene {
  GrayImage image;
  std::vector<TruthBlob> truth;
};

/// background + texture + sum of blobs + seeded Gaussian noise, clamped to
/// [0, 255].
/// Bit-identical for a fixed spec.
Scene render_blob_scene(const SceneSpec& spec);

struct EvalReport {
  int matched = 0;
  int missed = 0;
  int false_positives = 0;
  double mean_center_error = 0.0;       // pixels
  double mean_orientation_error = 0.0;  // radians, modulo pi
  double mean_axis_ratio_error = 0.0;   // |det ratio - truth ratio| / truth ratio
  double repeatability = 0.0;           // matched / min(|dets|, |truth|)
};

/// Greedy one-to-one matching by ascending centre distance within tol_px.
/// Orientation error is averaged over matches with anisotropic truth only.
EvalReport evaluate_detections(const std::vector<Blob>& dets, const std::vector<TruthBlob>& truth,
                               double tol_px);

/// Row-major 3x3 homography mapping image A coordinates to image B.
using Homography = std::array<double, 9>;

Homography identity_homography();
Homography invert_homography(const Homography& h);
Homography compose(const Homography& outer, const Homography& inner);
/// Rotation by `angle` and isotropic `scale` about (cx, cy), then shift.
Homography similarity_about(double angle, double scale, double cx, double cy, double tx = 0.0,
                            double ty = 0.0);
std::array<double, 2> apply_homography(const Homography& h, double x, double y);

/// Inverse warp with bilinear sampling. Samples that fall outside the
/// source take the median source intensity.
GrayImage warp_image(const GrayImage& img, const Homography& h);

/// Fraction of A's detections whose mapped centre lands inside B's frame
/// and has a B detection within eps_px, over min(|A|, |A inside B|).
double repeatability(const std::vector<Blob>& dets_a, const std::vector<Blob>& dets_b,
                     const Homography& h, double eps_px, int width_b, int height_b);

/// Deterministic Gaussian variates from a 64-bit seed. Box-Muller over
/// mt19937_64, whose output sequence is fixed by the standard, so the stream
/// is the same on every standard library (std::normal_distribution is not).
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace soagdd
