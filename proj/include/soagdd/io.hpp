#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "soagdd/image.hpp"

namespace soagdd {

/// 8-bit interleaved RGB canvas used for overlays.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (!contains(x, y)) return;
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }
};

/// Decodes a PGM (P2/P5) or PPM (P3/P6) byte buffer to a raster of
/// intensities in [0, 255]. Colour input is reduced to luma. No minimum size.
Plane decode_pnm(const std::string& bytes);

/// Reads a PGM, PPM or PNG file as a grayscale image.
/// Colour is converted with luma 0.299 R + 0.587 G + 0.114 B.
GrayImage load_gray(const std::filesystem::path& path);

/// Encodes a raster as PGM. Values are rounded and clamped to [0, 255].
std::string encode_pgm(const Plane& img, bool binary = true);
std::string encode_ppm(const RgbImage& img);

void write_pgm(const std::filesystem::path& path, const Plane& img, bool binary = true);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

/// Grayscale-promoted RGB copy of an image.
RgbImage to_rgb(const Plane& img);

}  // namespace soagdd
