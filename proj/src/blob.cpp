#include "soagdd/blob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "soagdd/image.hpp"

namespace soagdd {

void sort_blobs(std::vector<Blob>& blobs) {
  std::stable_sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.cy != b.cy) return a.cy < b.cy;
    return a.cx < b.cx;
  });
}

std::vector<Blob> deduplicate_layers(std::vector<Blob> blobs) {
  sort_blobs(blobs);
  std::vector<Blob> kept;
  kept.reserve(blobs.size());
  for (const Blob& b : blobs) {
    bool duplicate = false;
    for (const Blob& k : kept) {
      if (k.layer == b.layer) continue;
      const double radius = 2.0 * static_cast<double>(1 << std::min(k.layer, b.layer));
      const double dist = std::hypot(k.cx - b.cx, k.cy - b.cy);
      const double ratio = std::max(k.short_axis, b.short_axis) / std::min(k.short_axis, b.short_axis);
      if (dist <= radius && ratio <= std::sqrt(2.0) * (1.0 + 1e-12)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(b);
  }
  return kept;
}

std::string format_blobs(const std::vector<Blob>& blobs, BlobFormat format) {
  std::string out;
  char buf[512];
  if (format == BlobFormat::Csv) {
    out = "cx,cy,short_axis,long_axis,orientation,response,layer\n";
  }
  for (const Blob& b : blobs) {
    const char* fmt = format == BlobFormat::Csv
                          ? "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n"
                          : "{\"cx\":%.6f,\"cy\":%.6f,\"short_axis\":%.6f,\"long_axis\":%.6f,"
                            "\"orientation\":%.6f,\"response\":%.6f,\"layer\":%d}\n";
    std::snprintf(buf, sizeof(buf), fmt, b.cx, b.cy, b.short_axis, b.long_axis, b.orientation,
                  b.response, b.layer);
    out += buf;
  }
  return out;
}

std::vector<Blob> parse_blobs(const std::string& text, BlobFormat format) {
  std::vector<Blob> blobs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Blob b;
    if (format == BlobFormat::Csv) {
      if (line_no == 1 && line.rfind("cx,", 0) == 0) continue;
      double layer = 0.0;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &b.cx, &b.cy, &b.short_axis,
                      &b.long_axis, &b.orientation, &b.response, &layer) != 7) {
        throw IoError("blob CSV: malformed line " + std::to_string(line_no));
      }
      b.layer = static_cast<int>(layer);
    } else {
      try {
        const auto j = nlohmann::json::parse(line);
        b.cx = j.at("cx").get<double>();
        b.cy = j.at("cy").get<double>();
        b.short_axis = j.at("short_axis").get<double>();
        b.long_axis = j.at("long_axis").get<double>();
        b.orientation = j.at("orientation").get<double>();
        b.response = j.at("response").get<double>();
        b.layer = static_cast<int>(j.at("layer").get<double>());
      } catch (const nlohmann::json::exception& e) {
        throw IoError("blob JSON: line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    blobs.push_back(b);
  }
  return blobs;
}

}  // namespace soagdd
