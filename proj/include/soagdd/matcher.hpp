#pragma once

#include <array>
#include <string>
#include <vector>

#include "soagdd/blob.hpp"
#include "soagdd/image.hpp"
#include "soagdd/io.hpp"
#include "soagdd/synth.hpp"

namespace soagdd {

inline constexpr int kDescriptorGrid = 8;
inline constexpr double kDescriptorExtent = 3.0;  // half-extent in axis units
inline constexpr double kDefaultRatioMax = 0.8;

/// Mean-free, unit-norm 8x8 patch sampled over the blob's ellipse. Zero for
/// flat patches.
using Descriptor = std::array<double, kDescriptorGrid * kDescriptorGrid>;

/// Samples an 8x8 grid spanning +-3 short axes along the blob orientation
/// and +-3 long axes across it, with bilinear interpolation (border
/// replicated). Throws InvalidArgument when the whole support lies outside
/// the image.
Descriptor describe(const GrayImage& img, const Blob& b);

std::vector<Descriptor> describe_all(const GrayImage& img, const std::vector<Blob>& blobs);

double descriptor_distance(const Descriptor& a, const Descriptor& b);

struct MatchPair {
  int index_a = 0;
  int index_b = 0;
  double distance = 0.0;
  double ratio = 0.0;  // nearest / second nearest

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

/// Nearest-neighbour matching with the ratio test. Each B index is used at
/// most once; conflicts keep the smaller distance. With fewer than two B
/// descriptors the nearest is accepted only below distance 0.1.
/// Output is sorted by index_a.
std::vector<MatchPair> match_descriptors(const std::vector<Descriptor>& a,
                                         const std::vector<Descriptor>& b,
                                         double ratio_max = kDefaultRatioMax);

/// Fraction of matches whose A centre maps within tol_px of its B centre.
double homography_consistency(const std::vector<MatchPair>& matches, const std::vector<Blob>& a,
                              const std::vector<Blob>& b, const Homography& h, double tol_px);

std::string format_matches(const std::vector<MatchPair>& matches);

}  // namespace soagdd
