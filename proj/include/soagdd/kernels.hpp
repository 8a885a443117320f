#pragma once

#include <numbers>
#include <vector>

#include "soagdd/image.hpp"

namespace soagdd {

/// Parameters of one anisotropic Gaussian filter.
///
/// `sigma` is the scale, `rho` the anisotropy factor (1 = isotropic) and
/// `theta` the derivative direction. The Gaussian has standard deviation
/// sigma / rho along theta and sigma * rho across it, so its quadratic form
/// has unit determinant and the kernel has unit mass.
struct FilterParams {
  double sigma = 1.0;
  double rho = 1.0;
  double theta = 0.0;

  /// Throws InvalidArgument unless sigma > 0, rho >= 1 and theta is finite.
  void validate() const;
};

/// Square kernel of side 2 * radius + 1, row-major, centred at (radius, radius).
class KernelGrid {
 public:
  KernelGrid() = default;
  KernelGrid(int radius, std::vector<double> weights);

  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  const std::vector<double>& weights() const { return weights_; }

  /// Weight at offset (dx, dy) from the centre, |dx|, |dy| <= radius.
  double at(int dx, int dy) const {
    return weights_[static_cast<std::size_t>(dy + radius_) * side() + (dx + radius_)];
  }

  double sum() const;
  double max_abs() const;

  /// Element-wise accumulation; radii must match.
  KernelGrid& operator+=(const KernelGrid& other);
  KernelGrid& operator*=(double factor);

  friend bool operator==(const KernelGrid&, const KernelGrid&) = default;

 private:
  int radius_ = 0;
  std::vector<double> weights_{1.0};
};

/// Support half-width shared by all anisotropic kernels:
/// ceil(max(4.5 sigma rho, 6 sigma / rho)). A 4-std cut leaves second
/// derivative truncation errors of several percent at rho = 1.
int kernel_radius(double sigma, double rho);

enum class DcCorrection { Apply, Skip };

/// Samples the anisotropic Gaussian at integer offsets. Not renormalised.
KernelGrid aniso_gaussian_kernel(const FilterParams& p);

/// First-order directional derivative of the anisotropic Gaussian along theta.
KernelGrid foagdd_kernel(const FilterParams& p);

/// Second-order directional derivative of the anisotropic Gaussian along
/// theta:  (rho^2/sigma^2) ((rho^2/sigma^2) u^2 - 1) g,  u = x cos + y sin.
/// With DcCorrection::Apply the mean weight is subtracted so the kernel
/// annihilates constant images.
KernelGrid soagdd_kernel(const FilterParams& p, DcCorrection dc = DcCorrection::Apply);

/// The multi-scale, multi-anisotropy, multi-orientation filter family.
struct FilterBank {
  std::vector<double> sigmas;  // strictly increasing
  std::vector<double> rhos;    // strictly increasing, >= 1
  int orientations = 8;        // K; theta_k = k pi / K

  int scale_count() const { return static_cast<int>(sigmas.size()); }
  int anisotropy_count() const { return static_cast<int>(rhos.size()); }
  double theta(int k) const { return k * std::numbers::pi / orientations; }
  FilterParams params(int s, int a, int k) const { return {sigmas[s], rhos[a], theta(k)}; }

  /// Largest kernel side over the whole bank.
  int max_kernel_side() const;

  void validate() const;

  /// Builds a bank from squared values, e.g. sigma^2 in {2..16}.
  static FilterBank from_squares(const std::vector<double>& sigma_squares,
                                 const std::vector<double>& rho_squares, int orientations);

  /// sigma^2 in {2, ..., 16}, rho^2 in {1, ..., 5}, K = 8.
  static FilterBank defaults();
};

/// Writes the plain-text kernel dump: a header line
/// "radius R sigma S rho P theta T" then 2R+1 rows of weights with 9
/// significant digits.
std::string format_kernel_dump(const KernelGrid& k, const FilterParams& p);

}  // namespace soagdd
