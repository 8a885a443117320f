#include "soagdd/image.hpp"

#include <cmath>
#include <string>

namespace soagdd {

Plane::Plane(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw InvalidArgument("Plane: negative dimensions");
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0) {
    throw InvalidArgument("Plane: negative dimensions");
  }
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw InvalidArgument("Plane: data length " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : GrayImage(Plane(width, height, std::move(data))) {}

GrayImage::GrayImage(Plane plane) : plane_(std::move(plane)) {
  if (plane_.width() < kMinSide || plane_.height() < kMinSide) {
    throw InvalidArgument("GrayImage: " + std::to_string(plane_.width()) + "x" +
                          std::to_string(plane_.height()) + " is below the 4x4 minimum");
  }
  for (double v : plane_.pixels()) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("GrayImage: non-finite intensity");
    }
  }
}

}  // namespace soagdd
