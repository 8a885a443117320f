#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "soagdd/cli.hpp"
#include "soagdd/io.hpp"
#include "soagdd/serialize.hpp"

using namespace soagdd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path dir() {
  const fs::path d = fs::temp_directory_path() / "soagdd_cli_unit";
  fs::create_directories(d);
  return d;
}

std::string p(const std::string& name) { return (dir() / name).string(); }

// Centre value of a kernel dump: header line, then rows.
double dump_centre(const std::string& dump) {
  std::istringstream in(dump);
  std::string word;
  int radius = 0;
  in >> word >> radius;
  std::string line;
  std::getline(in, line);
  double v = 0.0;
  for (int i = 0; i <= radius * (2 * radius + 1) + radius; ++i) in >> v;
  return v;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"detect"}).code == kExitUsage);
    CHECK(run({"detect", "--in", "x.pgm", "--bogus"}).code == kExitUsage);
    CHECK(run({"detect", "--in", "x.pgm", "--format", "xml"}).code == kExitUsage);
    const Run r = run({"detect", "--in", "x.pgm", "--orientations", "0"});
    CHECK(r.code == kExitUsage);
    CHECK_FALSE(r.err.empty());
    CHECK(run({"synth", "--out", p("a.pgm")}).code == kExitUsage);  // no scene
    CHECK(run({"synth", "--preset", "nope", "--out", p("a.pgm")}).code == kExitUsage);
  }

  TEST_CASE("help exits with 0") {
    const Run r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("detect") != std::string::npos);
  }

  TEST_CASE("I/O errors exit with 2") {
    const Run r = run({"detect", "--in", p("missing.pgm")});
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("missing.pgm") != std::string::npos);
    write_file_atomic(p("garbage.pgm"), "P5\n9 9\n255\nxx");
    CHECK(run({"detect", "--in", p("garbage.pgm")}).code == kExitIo);
  }

  TEST_CASE("constant image gives an empty blob file") {
    write_pgm(p("constant.pgm"), Plane(64, 64, 100.0));
    const Run r = run({"detect", "--in", p("constant.pgm"), "--out", p("constant.jsonl")});
    CHECK(r.code == kExitOk);
    CHECK(read_file(p("constant.jsonl")).empty());
    const Run csv = run({"detect", "--in", p("constant.pgm"), "--format", "csv"});
    CHECK(csv.out == "cx,cy,short_axis,long_axis,orientation,response,layer\n");
  }

  TEST_CASE("kernel dump centre weight") {
    const Run r = run({"kernels", "--sigma2", "2", "--rho2", "1", "--theta", "0"});
    REQUIRE(r.code == kExitOk);
    CHECK(dump_centre(r.out) == doctest::Approx(-0.0397887).epsilon(1e-5));
    const Run raw = run({"kernels", "--sigma2", "2", "--rho2", "5", "--theta", "0", "--raw"});
    CHECK(dump_centre(raw.out) == doctest::Approx(-0.1989437).epsilon(1e-6));
    const Run many = run({"kernels", "--sigma2", "2,4", "--rho2", "1,4", "--orientations", "4", "--out",
                          p("kernels")});
    CHECK(many.code == kExitOk);
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(p("kernels"))) ++files;
    CHECK(files == 16);
  }

  TEST_CASE("synth, detect, eval") {
    REQUIRE(run({"synth", "--preset", "aniso", "--out", p("aniso.pgm"), "--truth", p("aniso.json")}).code == 0);
    REQUIRE(run({"detect", "--in", p("aniso.pgm"), "--out", p("aniso.jsonl"), "--overlay", p("aniso.ppm")}).code == 0);
    CHECK(load_gray(p("aniso.ppm")).width() == 208);
    const Run e = run({"eval", "--detections", p("aniso.jsonl"), "--truth", p("aniso.json"), "--out", p("eval.json")});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("input") != std::string::npos);
    CHECK(read_file(p("eval.json")).find("\"matched\": 3") != std::string::npos);
  }

  TEST_CASE("baselines via the command line") {
    REQUIRE(run({"synth", "--preset", "iso", "--out", p("iso.pgm")}).code == 0);
    for (const char* m : {"hessian", "dog"}) {
      const Run r = run({"baseline", "--method", m, "--in", p("iso.pgm"), "--format", "csv"});
      CHECK(r.code == 0);
      CHECK(parse_blobs(r.out, BlobFormat::Csv).size() >= 2);
    }
    CHECK(run({"baseline", "--method", "sift", "--in", p("iso.pgm")}).code == kExitUsage);
  }

  TEST_CASE("compare is reproducible and seed-dependent") {
    const std::string scene = p("scene.json");
    write_file_atomic(scene, scene_spec_to_json(scene_preset("aniso")));
    const Run a = run({"compare", "--scene", scene, "--seed", "7"});
    const Run b = run({"compare", "--scene", scene, "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("soagdd") != std::string::npos);
    CHECK(a.out.find("hessian") != std::string::npos);
    CHECK(a.out.find("dog") != std::string::npos);
    REQUIRE(run({"compare", "--preset", "aniso", "--out", p("compare.json")}).code == 0);
    CHECK(read_file(p("compare.json")).find("\"dog\"") != std::string::npos);
  }

  TEST_CASE("match with a known homography") {
    REQUIRE(run({"synth", "--preset", "mixed", "--out", p("m1.pgm")}).code == 0);
    const std::string h = p("h.json");
    write_file_atomic(h, homography_to_json(identity_homography()));
    const Run r = run({"match", "--in", p("m1.pgm"), "--in", p("m1.pgm"), "--homography", h, "--overlay",
                       p("match.ppm")});
    REQUIRE(r.code == 0);
    CHECK_FALSE(r.out.empty());
    CHECK(r.err.find("consistent 1.0000") != std::string::npos);
    CHECK(run({"match", "--in", p("m1.pgm")}).code == kExitUsage);
  }
}
