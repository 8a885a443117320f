#pragma once

#include <string>
#include <vector>

#include "soagdd/synth.hpp"

namespace soagdd {

/// Scene JSON: {width, height, background, noise_std, texture_std,
/// texture_scale, seed, blobs: [{cx, cy,
/// sigma_minor, sigma_major, orientation, amplitude}]}. Missing scalar keys
/// take SceneSpec defaults.
SceneSpec parse_scene_spec(const std::string& json_text);
std::string scene_spec_to_json(const SceneSpec& spec);

std::string truth_to_json(const std::vector<TruthBlob>& truth);
std::vector<TruthBlob> parse_truth(const std::string& json_text);

std::string eval_report_to_json(const EvalReport& r);
/// Fixed-width table, one row per (label, report).
std::string format_eval_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

/// {"h": [9 numbers, row-major]}
Homography parse_homography(const std::string& json_text);
std::string homography_to_json(const Homography& h);

/// Built-in scenes: "iso", "aniso", "mixed" and "textured" (the mixed blobs
/// on a smooth random background).
SceneSpec scene_preset(const std::string& name);

}  // namespace soagdd
