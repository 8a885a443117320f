#pragma once

#include <cstdint>
#include <vector>

#include "soagdd/blob.hpp"
#include "soagdd/io.hpp"
#include "soagdd/matcher.hpp"

namespace soagdd {

struct Color {
  std::uint8_t r, g, b;
};

inline constexpr Color kRed{255, 0, 0};
inline constexpr Color kGreen{0, 255, 0};

void draw_line(RgbImage& canvas, int x0, int y0, int x1, int y1, Color c);

/// 1 px outline of the ellipse with semi-axes (a, b), `a` along `angle`.
void draw_ellipse(RgbImage& canvas, double cx, double cy, double a, double b, double angle, Color c);

/// Grayscale-promoted image with every blob outlined in red. Outlines use
/// semi-axes of twice the blob's axes.
RgbImage render_blob_overlay(const Plane& img, const std::vector<Blob>& blobs);

/// Images side by side, blob outlines in red and match lines in green.
RgbImage render_match_overlay(const Plane& a, const std::vector<Blob>& blobs_a, const Plane& b,
                              const std::vector<Blob>& blobs_b,
                              const std::vector<MatchPair>& matches);

}  // namespace soagdd
