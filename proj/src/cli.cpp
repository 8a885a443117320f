#include "soagdd/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "soagdd/baselines.hpp"
#include "soagdd/detector.hpp"
#include "soagdd/io.hpp"
#include "soagdd/matcher.hpp"
#include "soagdd/overlay.hpp"
#include "soagdd/serialize.hpp"
#include "soagdd/synth.hpp"

namespace soagdd {
namespace {

namespace fs = std::filesystem;

struct DetectorOptions {
  std::vector<double> scales;
  std::vector<double> rhos;
  int orientations = 8;
  double threshold = kDefaultBlobThreshold;
  int pyramid_t = kDefaultPyramidT;
  std::string selection = "base";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--scales", scales, "Scales as sigma^2 values (default 2,...,16)")->delimiter(',');
    cmd->add_option("--rhos", rhos, "Anisotropy factors as rho^2 values (default 1,...,5)")->delimiter(',');
    cmd->add_option("--orientations", orientations, "Number of filter orientations K");
    cmd->add_option("--threshold", threshold, "Blob threshold on the measure");
    cmd->add_option("--pyramid-t", pyramid_t, "Minimum pyramid resolution exponent t");
    cmd->add_option("--scale-selection", selection, "base | max-rho")
        ->check(CLI::IsMember({"base", "max-rho"}));
  }

  DetectorParams params() const {
    const FilterBank def = FilterBank::defaults();
    std::vector<double> s2 = scales;
    std::vector<double> r2 = rhos;
    if (s2.empty()) {
      for (double s : def.sigmas) s2.push_back(std::round(s * s));
    }
    if (r2.empty()) {
      for (double r : def.rhos) r2.push_back(std::round(r * r));
    }
    DetectorParams p;
    p.bank = FilterBank::from_squares(s2, r2, orientations);
    p.threshold = threshold;
    p.pyramid_t = pyramid_t;
    p.selection = selection == "max-rho" ? ScaleSelection::MaxOverAnisotropy : ScaleSelection::BaseAnisotropy;
    p.validate();
    return p;
  }
};

BlobFormat parse_format(const std::string& f) {
  return f == "csv" ? BlobFormat::Csv : BlobFormat::JsonLines;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file_atomic(path, contents);
  }
}

SceneSpec load_scene(const std::string& scene_path, const std::string& preset, long long seed) {
  if (scene_path.empty() == preset.empty()) {
    throw InvalidArgument("exactly one of --scene or --preset is required");
  }
  SceneSpec spec = scene_path.empty() ? scene_preset(preset) : parse_scene_spec(read_file(scene_path));
  if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
  spec.validate();
  return spec;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blob detection with second-order anisotropic Gaussian directional derivative filters",
               "soagdd"};
  app.require_subcommand(1);
  std::function<void()> action;

  // detect -----------------------------------------------------------------
  DetectorOptions det_opts;
  std::string det_in, det_out, det_overlay, det_format = "json";
  {
    CLI::App* cmd = app.add_subcommand("detect", "Detect SOAGDD blobs in an image");
    cmd->add_option("--in", det_in, "Input image (PGM, PPM or PNG)")->required();
    cmd->add_option("--out", det_out, "Blob list output (default stdout)");
    cmd->add_option("--overlay", det_overlay, "Ellipse overlay PPM");
    cmd->add_option("--format", det_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    det_opts.add_to(cmd);
    cmd->callback([&] {
      action = [&] {
        const DetectorParams params = det_opts.params();
        const GrayImage img = load_gray(det_in);
        const std::vector<Blob> blobs = detect_blobs(img, params);
        emit(det_out, format_blobs(blobs, parse_format(det_format)), out);
        if (!det_overlay.empty()) write_ppm(det_overlay, render_blob_overlay(img.plane(), blobs));
      };
    });
  }

  // baseline ---------------------------------------------------------------
  std::string base_method, base_in, base_out, base_overlay, base_format = "json";
  std::vector<double> base_scales;
  double base_threshold = -1.0;
  double base_varsigma = 6.0;
  int base_t = kDefaultPyramidT;
  {
    CLI::App* cmd = app.add_subcommand("baseline", "Run the Hessian-determinant or DoG detector");
    cmd->add_option("--method", base_method, "hessian | dog")
        ->required()
        ->check(CLI::IsMember({"hessian", "dog"}));
    cmd->add_option("--in", base_in, "Input image")->required();
    cmd->add_option("--out", base_out, "Blob list output (default stdout)");
    cmd->add_option("--overlay", base_overlay, "Circle overlay PPM");
    cmd->add_option("--format", base_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--scales", base_scales, "Hessian scales as sigma^2 values")->delimiter(',');
    cmd->add_option("--threshold", base_threshold, "Response threshold (method default if omitted)");
    cmd->add_option("--varsigma", base_varsigma, "DoG edge eigenvalue-ratio limit");
    cmd->add_option("--pyramid-t", base_t, "DoG minimum pyramid resolution exponent t");
    cmd->callback([&] {
      action = [&] {
        const GrayImage img = load_gray(base_in);
        std::vector<Blob> blobs;
        if (base_method == "hessian") {
          HessianParams p = HessianParams::defaults();
          if (!base_scales.empty()) {
            p.sigmas.clear();
            for (double s2 : base_scales) p.sigmas.push_back(std::sqrt(s2));
          }
          if (base_threshold >= 0.0) p.threshold = base_threshold;
          blobs = hessian_det_detect(img, p);
        } else {
          DoGParams p;
          p.varsigma = base_varsigma;
          p.pyramid_t = base_t;
          if (base_threshold >= 0.0) p.threshold = base_threshold;
          blobs = dog_detect(img, p);
        }
        emit(base_out, format_blobs(blobs, parse_format(base_format)), out);
        if (!base_overlay.empty()) write_ppm(base_overlay, render_blob_overlay(img.plane(), blobs));
      };
    });
  }

  // kernels ----------------------------------------------------------------
  std::vector<double> k_sigma2{2.0}, k_rho2{1.0}, k_theta;
  int k_orient = 0;
  std::string k_type = "soagdd", k_out;
  bool k_raw = false;
  {
    CLI::App* cmd = app.add_subcommand("kernels", "Dump discretised filter kernels");
    cmd->add_option("--sigma2", k_sigma2, "sigma^2 values")->delimiter(',');
    cmd->add_option("--rho2", k_rho2, "rho^2 values")->delimiter(',');
    cmd->add_option("--theta", k_theta, "Orientations in radians")->delimiter(',');
    cmd->add_option("--orientations", k_orient, "Use theta_k = k pi / K for k < K instead of --theta");
    cmd->add_option("--type", k_type, "soagdd | foagdd | gaussian")
        ->check(CLI::IsMember({"soagdd", "foagdd", "gaussian"}));
    cmd->add_flag("--raw", k_raw, "Skip the SOAGDD zero-mean correction");
    cmd->add_option("--out", k_out,
                    "Output file for one kernel, or directory for several (default stdout)");
    cmd->callback([&] {
      action = [&] {
        std::vector<double> thetas = k_theta;
        if (k_orient > 0) {
          thetas.clear();
          for (int k = 0; k < k_orient; ++k) thetas.push_back(k * std::numbers::pi / k_orient);
        }
        if (thetas.empty()) thetas.push_back(0.0);
        const std::size_t count = k_sigma2.size() * k_rho2.size() * thetas.size();
        const bool to_dir = count > 1 && !k_out.empty();
        if (to_dir) fs::create_directories(k_out);
        for (double s2 : k_sigma2) {
          for (double r2 : k_rho2) {
            for (std::size_t t = 0; t < thetas.size(); ++t) {
              if (!(s2 > 0.0) || !(r2 >= 1.0)) throw InvalidArgument("kernels: need sigma2 > 0, rho2 >= 1");
              const FilterParams fp{std::sqrt(s2), std::sqrt(r2), thetas[t]};
              KernelGrid kern;
              if (k_type == "gaussian") {
                kern = aniso_gaussian_kernel(fp);
              } else if (k_type == "foagdd") {
                kern = foagdd_kernel(fp);
              } else {
                kern = soagdd_kernel(fp, k_raw ? DcCorrection::Skip : DcCorrection::Apply);
              }
              const std::string dump = format_kernel_dump(kern, fp);
              if (to_dir) {
                std::ostringstream name;
                name << k_type << "_s" << s2 << "_r" << r2 << "_t" << t << ".txt";
                write_file_atomic(fs::path(k_out) / name.str(), dump);
              } else {
                emit(k_out, dump, out);
              }
            }
          }
        }
      };
    });
  }

  // synth ------------------------------------------------------------------
  std::string syn_scene, syn_preset, syn_out, syn_truth;
  long long syn_seed = -1;
  {
    CLI::App* cmd = app.add_subcommand("synth", "Render a synthetic blob scene");
    cmd->add_option("--scene", syn_scene, "Scene JSON");
    cmd->add_option("--preset", syn_preset, "Built-in scene: iso | aniso | mixed | textured");
    cmd->add_option("--seed", syn_seed, "Override the scene's noise seed");
    cmd->add_option("--out", syn_out, "Output PGM")->required();
    cmd->add_option("--truth", syn_truth, "Ground-truth JSON output");
    cmd->callback([&] {
      action = [&] {
        const Scene scene = render_blob_scene(load_scene(syn_scene, syn_preset, syn_seed));
        write_pgm(syn_out, scene.image.plane());
        if (!syn_truth.empty()) write_file_atomic(syn_truth, truth_to_json(scene.truth));
      };
    });
  }

  // eval -------------------------------------------------------------------
  std::string ev_dets, ev_truth, ev_out, ev_format = "json";
  double ev_tol = 3.0;
  {
    CLI::App* cmd = app.add_subcommand("eval", "Score detections against ground truth");
    cmd->add_option("--detections", ev_dets, "Blob list")->required();
    cmd->add_option("--truth", ev_truth, "Ground-truth JSON (array or scene)")->required();
    cmd->add_option("--tol", ev_tol, "Centre matching tolerance in pixels");
    cmd->add_option("--format", ev_format, "Blob list format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", ev_out, "EvalReport JSON output");
    cmd->callback([&] {
      action = [&] {
        const auto dets = parse_blobs(read_file(ev_dets), parse_format(ev_format));
        const auto truth = parse_truth(read_file(ev_truth));
        const EvalReport r = evaluate_detections(dets, truth, ev_tol);
        out << format_eval_table({{"input", r}});
        if (!ev_out.empty()) write_file_atomic(ev_out, eval_report_to_json(r));
      };
    });
  }

  // match ------------------------------------------------------------------
  DetectorOptions m_opts;
  std::vector<std::string> m_in;
  std::string m_out, m_overlay, m_h;
  double m_ratio = kDefaultRatioMax;
  double m_tol = 3.0;
  {
    CLI::App* cmd = app.add_subcommand("match", "Detect, describe and match blobs between two images");
    cmd->add_option("--in", m_in, "The two images (give --in twice)")->required()->expected(2);
    cmd->add_option("--out", m_out, "Match list output (default stdout)");
    cmd->add_option("--overlay", m_overlay, "Side-by-side match visualisation PPM");
    cmd->add_option("--ratio-max", m_ratio, "Nearest/second-nearest ratio limit");
    cmd->add_option("--homography", m_h, "Known homography JSON; reports match consistency");
    cmd->add_option("--tol", m_tol, "Consistency tolerance in pixels");
    m_opts.add_to(cmd);
    cmd->callback([&] {
      action = [&] {
        const DetectorParams params = m_opts.params();
        const GrayImage a = load_gray(m_in[0]);
        const GrayImage b = load_gray(m_in[1]);
        const KernelBank kernels(params.bank);
        const auto blobs_a = detect_blobs(a, params, kernels);
        const auto blobs_b = detect_blobs(b, params, kernels);
        const auto matches = match_descriptors(describe_all(a, blobs_a), describe_all(b, blobs_b), m_ratio);
        emit(m_out, format_matches(matches), out);
        if (!m_overlay.empty()) {
          write_ppm(m_overlay, render_match_overlay(a.plane(), blobs_a, b.plane(), blobs_b, matches));
        }
        if (!m_h.empty()) {
          const Homography h = parse_homography(read_file(m_h));
          char buf[128];
          std::snprintf(buf, sizeof(buf), "matches %zu consistent %.4f\n", matches.size(),
                        homography_consistency(matches, blobs_a, blobs_b, h, m_tol));
          err << buf;
        }
      };
    });
  }

  // compare ----------------------------------------------------------------
  DetectorOptions c_opts;
  std::string c_scene, c_preset, c_out;
  long long c_seed = -1;
  double c_tol = 3.0;
  {
    CLI::App* cmd = app.add_subcommand("compare", "Evaluate SOAGDD, Hessian and DoG on one scene");
    cmd->add_option("--scene", c_scene, "Scene JSON");
    cmd->add_option("--preset", c_preset, "Built-in scene: iso | aniso | mixed | textured");
    cmd->add_option("--seed", c_seed, "Override the scene's noise seed");
    cmd->add_option("--tol", c_tol, "Centre matching tolerance in pixels");
    cmd->add_option("--out", c_out, "JSON report output");
    c_opts.add_to(cmd);
    cmd->callback([&] {
      action = [&] {
        const DetectorParams params = c_opts.params();
        const Scene scene = render_blob_scene(load_scene(c_scene, c_preset, c_seed));
        std::vector<std::pair<std::string, EvalReport>> rows;
        rows.emplace_back("soagdd", evaluate_detections(detect_blobs(scene.image, params), scene.truth, c_tol));
        rows.emplace_back("hessian", evaluate_detections(hessian_det_detect(scene.image, HessianParams::defaults()),
                                                         scene.truth, c_tol));
        rows.emplace_back("dog", evaluate_detections(dog_detect(scene.image, DoGParams{}), scene.truth, c_tol));
        const std::string table = format_eval_table(rows);
        out << table;
        if (!c_out.empty()) {
          std::string json = "{\n";
          for (std::size_t i = 0; i < rows.size(); ++i) {
            json += "\"" + rows[i].first + "\": " + eval_report_to_json(rows[i].second);
            if (i + 1 < rows.size()) json.insert(json.size() - 1, ",");
          }
          json += "}\n";
          write_file_atomic(c_out, json);
        }
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "soagdd: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const IoError& e) {
    err << "soagdd: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "soagdd: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "soagdd: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "soagdd: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace soagdd
