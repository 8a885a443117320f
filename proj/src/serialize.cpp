#include "soagdd/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

namespace soagdd {
namespace {

using nlohmann::json;

json truth_blob_json(const TruthBlob& b) {
  return json{{"cx", b.cx},
              {"cy", b.cy},
              {"sigma_minor", b.sigma_minor},
              {"sigma_major", b.sigma_major},
              {"orientation", b.orientation},
              {"amplitude", b.amplitude}};
}

TruthBlob truth_blob_from(const json& j) {
  TruthBlob b;
  b.cx = j.at("cx").get<double>();
  b.cy = j.at("cy").get<double>();
  b.sigma_minor = j.at("sigma_minor").get<double>();
  b.sigma_major = j.value("sigma_major", b.sigma_minor);
  b.orientation = j.value("orientation", 0.0);
  b.amplitude = j.value("amplitude", 100.0);
  return b;
}

template <typename F>
auto parse_or_throw(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(what + ": " + e.what());
  }
}

}  // namespace

SceneSpec parse_scene_spec(const std::string& json_text) {
  return parse_or_throw("scene JSON", [&] {
    const json j = json::parse(json_text);
    SceneSpec spec;
    spec.width = j.value("width", spec.width);
    spec.height = j.value("height", spec.height);
    spec.background = j.value("background", spec.background);
    spec.noise_std = j.value("noise_std", spec.noise_std);
    spec.texture_std = j.value("texture_std", spec.texture_std);
    spec.texture_scale = j.value("texture_scale", spec.texture_scale);
    spec.seed = j.value("seed", spec.seed);
    for (const json& b : j.value("blobs", json::array())) spec.blobs.push_back(truth_blob_from(b));
    return spec;
  });
}

std::string scene_spec_to_json(const SceneSpec& spec) {
  json blobs = json::array();
  for (const TruthBlob& b : spec.blobs) blobs.push_back(truth_blob_json(b));
  const json j{{"width", spec.width},
               {"height", spec.height},
               {"background", spec.background},
               {"noise_std", spec.noise_std},
               {"texture_std", spec.texture_std},
               {"texture_scale", spec.texture_scale},
               {"seed", spec.seed},
               {"blobs", blobs}};
  return j.dump(2) + "\n";
}

std::string truth_to_json(const std::vector<TruthBlob>& truth) {
  json arr = json::array();
  for (const TruthBlob& b : truth) arr.push_back(truth_blob_json(b));
  return arr.dump(2) + "\n";
}

std::vector<TruthBlob> parse_truth(const std::string& json_text) {
  return parse_or_throw("truth JSON", [&] {
    const json j = json::parse(json_text);
    // Accept either a bare array or a full scene document.
    const json& arr = j.is_array() ? j : j.at("blobs");
    std::vector<TruthBlob> out;
    for (const json& b : arr) out.push_back(truth_blob_from(b));
    return out;
  });
}

std::string eval_report_to_json(const EvalReport& r) {
  const json j{{"matched", r.matched},
               {"missed", r.missed},
               {"false_positives", r.false_positives},
               {"mean_center_error", r.mean_center_error},
               {"mean_orientation_error", r.mean_orientation_error},
               {"mean_axis_ratio_error", r.mean_axis_ratio_error},
               {"repeatability", r.repeatability}};
  return j.dump(2) + "\n";
}

std::string format_eval_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %7s %6s %6s %10s %10s %10s %8s\n", "method", "matched",
                "missed", "false", "center_px", "orient_rad", "ratio_err", "repeat");
  out += buf;
  for (const auto& [label, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-10s %7d %6d %6d %10.4f %10.4f %10.4f %8.4f\n", label.c_str(),
                  r.matched, r.missed, r.false_positives, r.mean_center_error,
                  r.mean_orientation_error, r.mean_axis_ratio_error, r.repeatability);
    out += buf;
  }
  return out;
}

Homography parse_homography(const std::string& json_text) {
  return parse_or_throw("homography JSON", [&] {
    const json j = json::parse(json_text);
    const json& arr = j.is_array() ? j : j.at("h");
    if (arr.size() != 9) throw IoError("homography JSON: expected 9 values");
    Homography h{};
    for (std::size_t i = 0; i < 9; ++i) h[i] = arr.at(i).get<double>();
    return h;
  });
}

std::string homography_to_json(const Homography& h) {
  return json{{"h", h}}.dump() + "\n";
}

SceneSpec scene_preset(const std::string& name) {
  SceneSpec spec;
  const double pi = std::numbers::pi;
  if (name == "iso") {
    spec.width = 160;
    spec.height = 96;
    spec.background = 20.0;
    spec.noise_std = 2.0;
    spec.seed = 7;
    spec.blobs = {{35, 48, 2, 2, 0, 200}, {80, 48, 3, 3, 0, 200}, {126, 48, 4, 4, 0, 200}};
  } else if (name == "aniso") {
    spec.width = 208;
    spec.height = 96;
    spec.background = 20.0;
    spec.noise_std = 2.0;
    spec.seed = 7;
    spec.blobs = {{48, 48, 3, 6, 0, 200}, {104, 48, 3, 6, pi / 4, 200}, {160, 48, 3, 6, pi / 2, 200}};
  } else if (name == "mixed" || name == "textured") {
    // 4x4 grid of distinct blobs, 46 px apart, around the image centre.
    spec.width = 256;
    spec.height = 256;
    spec.background = 30.0;
    spec.noise_std = 2.0;
    spec.seed = 11;
    const double minors[] = {2.0, 2.5, 3.0, 3.5};
    const double ratios[] = {1.0, 1.5, 2.0};
    for (int i = 0; i < 16; ++i) {
      TruthBlob b;
      b.cx = 59.0 + 46.0 * (i % 4);
      b.cy = 59.0 + 46.0 * (i / 4);
      b.sigma_minor = minors[(i * 3) % 4];
      b.sigma_major = b.sigma_minor * ratios[(i * 7) % 3];
      b.orientation = pi * ((i * 5) % 6) / 6.0;
      b.amplitude = 140.0 + 10.0 * ((i * 3) % 7);
      spec.blobs.push_back(b);
    }
    if (name == "textured") {
      spec.texture_std = 20.0;
      spec.texture_scale = 6.0;
    }
  } else {
    throw InvalidArgument("unknown scene preset '" + name + "' (expected iso, aniso, mixed or textured)");
  }
  spec.validate();
  return spec;
}

}  // namespace soagdd
