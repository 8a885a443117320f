#include "soagdd/response.hpp"

#include "soagdd/convolve.hpp"
#include "soagdd/parallel.hpp"

namespace soagdd {

KernelBank::KernelBank(FilterBank bank) : bank_(std::move(bank)) {
  bank_.validate();
  const int S = bank_.scale_count();
  const int A = bank_.anisotropy_count();
  const int K = bank_.orientations;
  kernels_.resize(static_cast<std::size_t>(S) * A * K);
  sums_.resize(static_cast<std::size_t>(S) * A);
  parallel_for(sums_.size(), [&](std::size_t sa) {
    const int s = static_cast<int>(sa / A);
    const int a = static_cast<int>(sa % A);
    KernelGrid sum;
    for (int k = 0; k < K; ++k) {
      KernelGrid kern = soagdd_kernel(bank_.params(s, a, k));
      if (k == 0) {
        sum = kern;
      } else {
        sum += kern;
      }
      kernels_[index(s, a, k)] = std::move(kern);
    }
    sum *= bank_.sigmas[s] * bank_.sigmas[s];
    sums_[sa] = std::move(sum);
  });
}

ResponseStack::ResponseStack(int scales, int anisotropies, int orientations, int width, int height)
    : scales_(scales),
      anisotropies_(anisotropies),
      orientations_(orientations),
      width_(width),
      height_(height),
      slices_(static_cast<std::size_t>(scales) * anisotropies * orientations, Plane(width, height)) {}

ResponseStack soagdd_response_stack(const GrayImage& img, const FilterBank& bank) {
  return soagdd_response_stack(img, KernelBank(bank));
}

ResponseStack soagdd_response_stack(const GrayImage& img, const KernelBank& kernels) {
  const FilterBank& bank = kernels.bank();
  const int S = bank.scale_count();
  const int A = bank.anisotropy_count();
  const int K = bank.orientations;
  ResponseStack stack(S, A, K, img.width(), img.height());
  parallel_for(static_cast<std::size_t>(S) * A * K, [&](std::size_t i) {
    const int k = static_cast<int>(i % K);
    const int a = static_cast<int>((i / K) % A);
    const int s = static_cast<int>(i / (static_cast<std::size_t>(K) * A));
    stack.slice(s, a, k) = convolve(img, kernels.kernel(s, a, k));
  });
  return stack;
}

}  // namespace soagdd
