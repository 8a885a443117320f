#pragma once

#include <vector>

#include "soagdd/image.hpp"
#include "soagdd/kernels.hpp"

namespace soagdd {

/// SOAGDD kernels of a whole bank, generated once and reused across images
/// and pyramid layers.
class KernelBank {
 public:
  explicit KernelBank(FilterBank bank);

  const FilterBank& bank() const { return bank_; }
  const KernelGrid& kernel(int s, int a, int k) const { return kernels_[index(s, a, k)]; }

  /// sigma_s^2 * sum_k kernel(s, a, k). Convolving with it yields the signed
  /// scale-normalised orientation sum directly (convolution is linear).
  const KernelGrid& orientation_sum(int s, int a) const {
    return sums_[static_cast<std::size_t>(s) * bank_.anisotropy_count() + a];
  }

 private:
  std::size_t index(int s, int a, int k) const {
    return (static_cast<std::size_t>(s) * bank_.anisotropy_count() + a) * bank_.orientations + k;
  }

  FilterBank bank_;
  std::vector<KernelGrid> kernels_;
  std::vector<KernelGrid> sums_;
};

/// Filter responses L(s, a, k) for every pixel of one image.
class ResponseStack {
 public:
  ResponseStack(int scales, int anisotropies, int orientations, int width, int height);

  int scales() const { return scales_; }
  int anisotropies() const { return anisotropies_; }
  int orientations() const { return orientations_; }
  int width() const { return width_; }
  int height() const { return height_; }

  const Plane& slice(int s, int a, int k) const { return slices_[index(s, a, k)]; }
  Plane& slice(int s, int a, int k) { return slices_[index(s, a, k)]; }

  double at(int s, int a, int k, int x, int y) const { return slice(s, a, k)(x, y); }

 private:
  std::size_t index(int s, int a, int k) const {
    return (static_cast<std::size_t>(s) * anisotropies_ + a) * orientations_ + k;
  }

  int scales_;
  int anisotropies_;
  int orientations_;
  int width_;
  int height_;
  std::vector<Plane> slices_;
};

/// Convolves the image with every SOAGDD kernel of the bank. Slices are
/// computed in parallel; the result does not depend on the thread count.
ResponseStack soagdd_response_stack(const GrayImage& img, const FilterBank& bank);
ResponseStack soagdd_response_stack(const GrayImage& img, const KernelBank& kernels);

}  // namespace soagdd
