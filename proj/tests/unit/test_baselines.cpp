#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "soagdd/baselines.hpp"
#include "soagdd/convolve.hpp"
#include "soagdd/synth.hpp"

using namespace soagdd;

namespace {

GrayImage blob_image(double tau, double amp = 200.0, double noise = 2.0) {
  SceneSpec s;
  s.width = 96;
  s.height = 96;
  s.noise_std = noise;
  s.seed = 3;
  s.blobs = {{48, 47, tau, tau, 0, amp}};
  return render_blob_scene(s).image;
}

GrayImage step_edge(int w, int h, bool vertical) {
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) v[static_cast<std::size_t>(y) * w + x] = (vertical ? x < w / 2 : y < h / 2) ? 0.0 : 255.0;
  }
  return GrayImage(w, h, v);
}

}  // namespace

TEST_SUITE("baselines") {
  TEST_CASE("Hessian: constant image") {
    const GrayImage img(64, 64, std::vector<double>(64 * 64, 77.0));
    CHECK(hessian_det_detect(img, HessianParams::defaults()).empty());
  }

  TEST_CASE("Hessian: derivatives of a quadratic surface") {
    // f = 0.5 x^2 + 3 x y - y^2 is reproduced exactly by central differences
    // after smoothing (a symmetric Gaussian preserves quadratics up to a
    // constant); check away from the mirrored border.
    Plane img(60, 60);
    for (int y = 0; y < 60; ++y) {
      for (int x = 0; x < 60; ++x) img(x, y) = 0.5 * x * x + 3.0 * x * y - 1.0 * y * y;
    }
    const HessianResponse h = hessian_response(img, 1.5);
    CHECK(h.xx(30, 30) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(h.yy(30, 30) == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(h.xy(30, 30) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(h.det(30, 30) == doctest::Approx(std::pow(1.5, 4) * (1.0 * -2.0 - 9.0)).epsilon(1e-6));
  }

  TEST_CASE("Hessian: isotropic blob") {
    const GrayImage img = blob_image(3.0);
    const auto blobs = hessian_det_detect(img, HessianParams::defaults());
    REQUIRE(blobs.size() == 1);
    CHECK(std::hypot(blobs[0].cx - 48, blobs[0].cy - 47) <= 1.0);
    CHECK(blobs[0].short_axis == blobs[0].long_axis);
    CHECK(blobs[0].orientation == 0.0);
    const HessianResponse h = hessian_response(blob_image(3.0, 200.0, 0.0).plane(), 3.0);
    CHECK(h.det(48, 47) > 0.0);
    CHECK(std::abs(h.xy(48, 47)) <= 1e-6 * std::abs(h.det(48, 47)));
  }

  TEST_CASE("edge-ratio rule") {
    CHECK_FALSE(is_edge_like(-1.0, -1.0, 0.0, 6.0));   // ratio 1
    CHECK(is_edge_like(-1.0, 0.0, 0.0, 6.0));          // det = 0
    CHECK(is_edge_like(-1.0, 1.0, 0.0, 6.0));          // saddle
    CHECK_FALSE(is_edge_like(-5.0, -1.0, 0.0, 6.0));   // ratio 5
    CHECK(is_edge_like(-6.0, -1.0, 0.0, 6.0));         // ratio 6, on the limit
    CHECK(is_edge_like(-7.0, -1.0, 0.0, 6.0));
  }

  TEST_CASE("DoG: constant image") {
    const Plane flat(64, 64, 40.0);
    DoGParams p;
    const DoGStack st = build_dog_stack(flat, p);
    CHECK(static_cast<int>(st.levels.size()) == p.levels);
    for (const Plane& d : st.levels) CHECK(oracle::max_abs(d) <= 1e-9);
    CHECK(dog_detect(GrayImage(flat), p).empty());
  }

  TEST_CASE("DoG: levels are differences of adjacent Gaussians") {
    const Plane img = oracle::random_plane(48, 40, 4);
    DoGParams p;
    const DoGStack st = build_dog_stack(img, p);
    for (int i = 0; i < p.levels; ++i) {
      const Plane a = gaussian_blur(img, p.level_sigma(i + 1));
      const Plane b = gaussian_blur(img, p.level_sigma(i));
      for (std::size_t n = 0; n < a.size(); n += 37) {
        CHECK(st.levels[i].pixels()[n] == doctest::Approx(a.pixels()[n] - b.pixels()[n]));
      }
    }
  }

  TEST_CASE("DoG: step edges are suppressed") {
    for (bool vertical : {true, false}) {
      CHECK(dog_detect(step_edge(64, 64, vertical), DoGParams{}).empty());
    }
  }

  TEST_CASE("DoG: isotropic blob") {
    const auto blobs = dog_detect(blob_image(3.0), DoGParams{});
    REQUIRE(blobs.size() == 1);
    CHECK(std::hypot(blobs[0].cx - 48, blobs[0].cy - 47) <= 1.0);
    // sigma levels 1.6 k^i; 3 must be within one level
    const double level = std::log(blobs[0].short_axis / 3.0) / std::log(std::cbrt(2.0));
    CHECK(std::abs(level) <= 1.0);
    CHECK(blobs[0].long_axis == blobs[0].short_axis);
  }

  TEST_CASE("parameter validation") {
    HessianParams h;
    CHECK_THROWS_AS(h.validate(), InvalidArgument);
    h.sigmas = {2.0, 1.0};
    CHECK_THROWS_AS(h.validate(), InvalidArgument);
    DoGParams d;
    d.varsigma = 1.0;
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    d = DoGParams{};
    d.levels = 2;
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
  }
}
