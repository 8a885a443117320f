#pragma once

#include <vector>

#include "soagdd/image.hpp"

namespace soagdd {

inline constexpr int kDefaultPyramidT = 2;

/// Number of pyramid layers for an image of `rows` x `cols`:
/// floor(log2(min(rows, cols))) - t. Throws InvalidArgument when the result
/// would be smaller than one layer.
int pyramid_depth(int rows, int cols, int t);

/// Halves both dimensions (rounding up) by 2x2 box averaging. Odd trailing
/// rows/columns are replicated before averaging.
GrayImage downsample_2x(const GrayImage& img);

struct Pyramid {
  std::vector<GrayImage> layers;  // layers[0] is the input image
  int t = kDefaultPyramidT;

  int size() const { return static_cast<int>(layers.size()); }
};

Pyramid build_pyramid(const GrayImage& img, int t = kDefaultPyramidT);

/// Maps a pixel coordinate of pyramid layer `layer` to base-image pixel
/// coordinates. Layer pixel i covers base pixels [2^l i, 2^l (i+1)).
double layer_to_base(double coord, int layer);

}  // namespace soagdd
