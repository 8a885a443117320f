#pragma once

#include <cmath>
#include <vector>

#include "soagdd/blob.hpp"
#include "soagdd/image.hpp"
#include "soagdd/pyramid.hpp"

namespace soagdd {

// ---------------------------------------------------------------------------
// Hessian determinant
// ---------------------------------------------------------------------------

/// Second derivatives of the Gaussian-smoothed image and the scale
/// normalised determinant sigma^4 (Lxx Lyy - Lxy^2).
struct HessianResponse {
  double sigma = 0.0;
  Plane xx;
  Plane yy;
  Plane xy;
  Plane det;
};

HessianResponse hessian_response(const Plane& img, double sigma);

struct HessianParams {
  std::vector<double> sigmas;  // non-empty, strictly increasing
  double threshold = 500.0;    // on |sigma^4 det H|

  void validate() const;
  /// Same scale grid as the SOAGDD detector: sigma^2 in {2, ..., 16}.
  static HessianParams defaults();
};

/// Unique 3x3 extrema of |det| above the threshold that also dominate the
/// same pixel at the neighbouring scales. Blobs are circles of radius sigma.
std::vector<Blob> hessian_det_detect(const GrayImage& img, const HessianParams& p);

// ---------------------------------------------------------------------------
// Difference of Gaussians
// ---------------------------------------------------------------------------

struct DoGParams {
  double sigma0 = 1.6;
  double k = std::cbrt(2.0);
  int levels = 5;          // DoG images per octave; extrema on levels 1..levels-2
  double varsigma = 6.0;   // edge eigenvalue-ratio limit
  double threshold = 8.0;  // on |D|
  int pyramid_t = kDefaultPyramidT;

  void validate() const;
  double level_sigma(int i) const { return sigma0 * std::pow(k, i); }
};

/// D_i = G(k^{i+1} sigma0) * I - G(k^i sigma0) * I for i in [0, levels).
struct DoGStack {
  std::vector<Plane> levels;
  double sigma0 = 0.0;
  double k = 0.0;
  double varsigma = 0.0;
};

DoGStack build_dog_stack(const Plane& img, const DoGParams& p);

/// True when the 2x2 Hessian (dxx, dyy, dxy) is edge-like: det <= 0 or
/// tr^2 / det >= (varsigma + 1)^2 / varsigma, i.e. eigenvalue ratio above
/// varsigma.
bool is_edge_like(double dxx, double dyy, double dxy, double varsigma);

/// Unique 3x3x3 extrema of |D| on one octave, edge-suppressed, in the
/// coordinates of `img`. Layer field is 0.
std::vector<Blob> dog_detect_octave(const Plane& img, const DoGParams& p);

/// One octave per pyramid layer, mapped to base coordinates and
/// deduplicated across layers.
std::vector<Blob> dog_detect(const GrayImage& img, const DoGParams& p);

}  // namespace soagdd
