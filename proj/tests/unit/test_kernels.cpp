#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "soagdd/kernels.hpp"

using namespace soagdd;
using std::numbers::pi;

TEST_SUITE("agdd-filters") {
  TEST_CASE("anisotropic Gaussian centre and symmetry") {
    const KernelGrid g = aniso_gaussian_kernel({std::sqrt(2.0), 1.0, 0.0});
    CHECK(g.at(0, 0) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-12));
    const KernelGrid h = aniso_gaussian_kernel({1.7, 1.9, 0.6});
    for (int y = -h.radius(); y <= h.radius(); ++y) {
      for (int x = -h.radius(); x <= h.radius(); ++x) CHECK(h.at(x, y) == doctest::Approx(h.at(-x, -y)));
    }
  }

  TEST_CASE("anisotropic Gaussian has unit mass") {
    const FilterParams p{std::sqrt(2.0), std::sqrt(2.0), 0.0};
    const double sum = aniso_gaussian_kernel(p).sum();
    CHECK(sum >= 0.999);
    CHECK(sum <= 1.001);
    // Fine-grid quadrature of the closed form confirms the continuous mass.
    double q = 0.0;
    const double h = 0.05;
    for (double y = -12; y <= 12; y += h) {
      for (double x = -12; x <= 12; x += h) q += oracle::gauss(x, y, p.sigma, p.rho, p.theta) * h * h;
    }
    CHECK(q == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("kernels match the closed forms at every tap") {
    for (const FilterParams p : {FilterParams{std::sqrt(2.0), 1.0, 0.0}, FilterParams{2.0, std::sqrt(3.0), 0.7},
                                 FilterParams{3.0, 2.0, 2.9}}) {
      const KernelGrid g = aniso_gaussian_kernel(p);
      const KernelGrid s = soagdd_kernel(p, DcCorrection::Skip);
      REQUIRE(g.radius() == static_cast<int>(std::ceil(std::max(4.5 * p.sigma * p.rho, 6.0 * p.sigma / p.rho))));
      for (int y = -g.radius(); y <= g.radius(); ++y) {
        for (int x = -g.radius(); x <= g.radius(); ++x) {
          CHECK(g.at(x, y) == doctest::Approx(oracle::gauss(x, y, p.sigma, p.rho, p.theta)).epsilon(1e-12));
          CHECK(s.at(x, y) == doctest::Approx(oracle::soagdd(x, y, p.sigma, p.rho, p.theta)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("FOAGDD is odd and vanishes at the centre") {
    const FilterParams p{std::sqrt(2.0), 1.0, 0.0};
    const KernelGrid f = foagdd_kernel(p);
    CHECK(f.at(0, 0) == 0.0);
    // Hand evaluation at (1, 0): -(rho^2/sigma^2) * u * g = -(1/2) * (1/4pi) e^{-1/4}
    CHECK(f.at(1, 0) == doctest::Approx(-0.5 * std::exp(-0.25) / (4.0 * pi)).epsilon(1e-12));
    const KernelGrid q = foagdd_kernel({2.2, 1.6, 1.1});
    for (int y = -q.radius(); y <= q.radius(); ++y) {
      for (int x = -q.radius(); x <= q.radius(); ++x) CHECK(q.at(x, y) == doctest::Approx(-q.at(-x, -y)));
    }
  }

  TEST_CASE("SOAGDD pre-correction centre weight") {
    const KernelGrid a = soagdd_kernel({std::sqrt(2.0), 1.0, 0.0}, DcCorrection::Skip);
    CHECK(a.at(0, 0) == doctest::Approx(-1.0 / (8.0 * pi)).epsilon(1e-12));
    CHECK(a.at(0, 0) == doctest::Approx(-0.0397887).epsilon(1e-6));
    const KernelGrid b = soagdd_kernel({std::sqrt(2.0), std::sqrt(5.0), 0.0}, DcCorrection::Skip);
    CHECK(b.at(0, 0) == doctest::Approx(-0.1989437).epsilon(1e-6));
  }

  TEST_CASE("SOAGDD truncation error is small and DC correction removes it") {
    const FilterBank bank = FilterBank::defaults();
    for (int s = 0; s < bank.scale_count(); ++s) {
      for (int a = 0; a < bank.anisotropy_count(); ++a) {
        for (int k = 0; k < bank.orientations; ++k) {
          const KernelGrid raw = soagdd_kernel(bank.params(s, a, k), DcCorrection::Skip);
          // Below ~0.9 px along the derivative axis the sampled kernel aliases
          // and its sum no longer tends to zero; see the aliasing case below.
          if (bank.sigmas[s] / bank.rhos[a] >= 0.9) CHECK(std::abs(raw.sum()) <= 1e-3 * raw.max_abs());
          const KernelGrid dc = soagdd_kernel(bank.params(s, a, k));
          CHECK(std::abs(dc.sum()) <= 1e-12 * dc.max_abs() * dc.weights().size());
        }
      }
    }
  }

  TEST_CASE("narrow SOAGDD kernels alias: the sampled sum does not depend on the support") {
    // sigma^2 = 2, rho^2 = 5: std sqrt(2/5) ~ 0.63 px along theta. Poisson
    // summation puts the residual in the first spectral replica, so growing
    // the window cannot remove it.
    const double sigma = std::sqrt(2.0);
    const double rho = std::sqrt(5.0);
    double prev = 0.0;
    for (int r : {20, 30, 40}) {
      const auto w = oracle::sample(r, [&](int x, int y) { return oracle::soagdd(x, y, sigma, rho, 0.0); });
      double sum = 0.0;
      for (double v : w) sum += v;
      if (r > 20) CHECK(sum == doctest::Approx(prev).epsilon(1e-9));
      prev = sum;
    }
    const KernelGrid k = soagdd_kernel({sigma, rho, 0.0}, DcCorrection::Skip);
    CHECK(k.sum() == doctest::Approx(prev).epsilon(1e-4));
    CHECK(std::abs(k.sum()) > 0.1 * k.max_abs());
  }

  TEST_CASE("SOAGDD is even and pi-periodic in theta") {
    const FilterParams p{2.5, std::sqrt(3.0), 0.4};
    const KernelGrid k = soagdd_kernel(p);
    const KernelGrid k2 = soagdd_kernel({p.sigma, p.rho, p.theta + pi});
    for (int y = -k.radius(); y <= k.radius(); ++y) {
      for (int x = -k.radius(); x <= k.radius(); ++x) {
        CHECK(k.at(x, y) == doctest::Approx(k.at(-x, -y)));
        CHECK(k.at(x, y) == doctest::Approx(k2.at(x, y)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(soagdd_kernel({0.0, 1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(soagdd_kernel({1.0, 0.9, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(soagdd_kernel({1.0, 1.0, std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(FilterBank::from_squares({4, 2}, {1}, 8), InvalidArgument);
    CHECK_THROWS_AS(FilterBank::from_squares({2}, {1}, 0), InvalidArgument);
    CHECK_THROWS_AS(FilterBank::from_squares({2}, {0.5}, 8), InvalidArgument);
  }

  TEST_CASE("default bank") {
    const FilterBank b = FilterBank::defaults();
    CHECK(b.scale_count() == 15);
    CHECK(b.anisotropy_count() == 5);
    CHECK(b.orientations == 8);
    CHECK(b.sigmas.front() == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.sigmas.back() == doctest::Approx(4.0));
    CHECK(b.rhos.back() == doctest::Approx(std::sqrt(5.0)));
    CHECK(b.theta(4) == doctest::Approx(pi / 2));
    CHECK(b.max_kernel_side() == 2 * static_cast<int>(std::ceil(18.0 * std::sqrt(5.0))) + 1);
  }

  TEST_CASE("kernel dump format") {
    const FilterParams p{std::sqrt(2.0), 1.0, 0.0};
    const std::string dump = format_kernel_dump(soagdd_kernel(p, DcCorrection::Skip), p);
    CHECK(dump.rfind("radius 9 sigma 1.41421356 rho 1 theta 0\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : dump) lines += c == '\n';
    CHECK(lines == 20);
  }
}

TEST_CASE("largest kernel of an isotropic-heavy bank") {
  const FilterBank b = FilterBank::from_squares({4, 9}, {1, 1.2}, 4);
  CHECK(b.max_kernel_side() == 2 * 18 + 1);  // 6 sigma at rho = 1
}
