#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace soagdd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A file could not be read, written or decoded.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Dense row-major raster of doubles. Used for filter responses and any
/// intermediate result that is not required to look like an image.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);
  Plane(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  double& operator()(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const double> pixels() const { return data_; }
  std::span<double> pixels() { return data_; }
  const double* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }
  double* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Grayscale image with intensities nominally in [0, 255].
///
/// Immutable once constructed. Construction enforces the minimum 4x4
/// resolution and finiteness of every pixel; the intensity range is not
/// enforced so that gain-scaled images stay representable.
class GrayImage {
 public:
  static constexpr int kMinSide = 4;

  GrayImage(int width, int height, std::vector<double> data);
  explicit GrayImage(Plane plane);

  int width() const { return plane_.width(); }
  int height() const { return plane_.height(); }
  double operator()(int x, int y) const { return plane_(x, y); }
  std::span<const double> pixels() const { return plane_.pixels(); }
  const Plane& plane() const { return plane_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Plane plane_;
};

}  // namespace soagdd
