#pragma once

#include <vector>

#include "soagdd/image.hpp"
#include "soagdd/kernels.hpp"

namespace soagdd {

/// Mirror index for the half-sample symmetric boundary (... b a | a b c ...).
/// Valid for any integer i and n >= 1.
int reflect_index(int i, int n);

/// Plane padded by `pad` pixels on every side with mirror reflection.
Plane pad_reflect(const Plane& img, int pad);

/// True 2D convolution (kernel flipped) with mirror boundaries. The output
/// has the input's size. Throws InvalidArgument when the kernel side exceeds
/// 2 * min(width, height).
Plane convolve(const Plane& img, const KernelGrid& k);
inline Plane convolve(const GrayImage& img, const KernelGrid& k) { return convolve(img.plane(), k); }

/// Convolution evaluated at a single pixel. Bit-identical to the
/// corresponding pixel of convolve().
double convolve_at(const Plane& img, const KernelGrid& k, int x, int y);

/// Normalised 1D sampled Gaussian of radius ceil(4 sigma).
std::vector<double> gaussian_taps(double sigma);

/// Separable normalised Gaussian smoothing with mirror boundaries.
Plane gaussian_blur(const Plane& img, double sigma);

}  // namespace soagdd
