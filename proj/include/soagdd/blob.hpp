#pragma once

#include <string>
#include <vector>

namespace soagdd {

/// A detected blob, in base-image pixel coordinates.
struct Blob {
  double cx = 0.0;
  double cy = 0.0;
  double short_axis = 0.0;   // pixels
  double long_axis = 0.0;    // pixels, >= short_axis
  double orientation = 0.0;  // direction of the short axis, radians in [0, pi)
  double response = 0.0;
  int layer = 0;  // pyramid layer the blob was found on

  friend bool operator==(const Blob&, const Blob&) = default;
};

/// Descending response, ties broken by (cy, cx) ascending.
void sort_blobs(std::vector<Blob>& blobs);

/// Cross-layer duplicate removal: two blobs from different layers are the
/// same structure when their centres are within 2 * 2^min(layer) pixels and
/// their short axes differ by a factor of at most sqrt(2). The stronger one wins.
/// Output is sorted with sort_blobs.
std::vector<Blob> deduplicate_layers(std::vector<Blob> blobs);

enum class BlobFormat { JsonLines, Csv };

/// One JSON object per line with keys cx, cy, short_axis, long_axis,
/// orientation, response (6 decimals) and layer.
std::string format_blobs(const std::vector<Blob>& blobs, BlobFormat format);

/// Parses the output of format_blobs. Throws IoError on malformed input.
std::vector<Blob> parse_blobs(const std::string& text, BlobFormat format);

}  // namespace soagdd
