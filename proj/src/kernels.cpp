#include "soagdd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace soagdd {
namespace {

// Evaluates `f(u, gauss)` on the integer grid of radius kernel_radius(),
// where u is the coordinate along theta and gauss the anisotropic Gaussian.
KernelGrid sample_kernel(const FilterParams& p,
                         const std::function<double(double u, double gauss)>& f) {
  p.validate();
  const int r = kernel_radius(p.sigma, p.rho);
  const int side = 2 * r + 1;
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const double s2 = p.sigma * p.sigma;
  const double rho2 = p.rho * p.rho;
  const double norm = 1.0 / (2.0 * std::numbers::pi * s2);

  std::vector<double> w(static_cast<std::size_t>(side) * side);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double u = dx * c + dy * s;
      const double v = -dx * s + dy * c;
      const double q = rho2 * u * u + v * v / rho2;
      const double g = norm * std::exp(-q / (2.0 * s2));
      w[static_cast<std::size_t>(dy + r) * side + (dx + r)] = f(u, g);
    }
  }
  return KernelGrid(r, std::move(w));
}

}  // namespace

void FilterParams::validate() const {
  if (!std::isfinite(sigma) || !std::isfinite(rho) || !std::isfinite(theta)) {
    throw InvalidArgument("FilterParams: non-finite parameter");
  }
  if (sigma <= 0.0) throw InvalidArgument("FilterParams: sigma must be positive");
  if (rho < 1.0) throw InvalidArgument("FilterParams: rho must be >= 1");
}

KernelGrid::KernelGrid(int radius, std::vector<double> weights)
    : radius_(radius), weights_(std::move(weights)) {
  if (radius < 0) throw InvalidArgument("KernelGrid: negative radius");
  if (weights_.size() != static_cast<std::size_t>(side()) * side()) {
    throw InvalidArgument("KernelGrid: weight count does not match radius");
  }
  for (double v : weights_) {
    if (!std::isfinite(v)) throw InvalidArgument("KernelGrid: non-finite weight");
  }
}

double KernelGrid::sum() const {
  double acc = 0.0;
  for (double v : weights_) acc += v;
  return acc;
}

double KernelGrid::max_abs() const {
  double m = 0.0;
  for (double v : weights_) m = std::max(m, std::abs(v));
  return m;
}

KernelGrid& KernelGrid::operator+=(const KernelGrid& other) {
  if (other.radius_ != radius_) throw InvalidArgument("KernelGrid: radius mismatch");
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += other.weights_[i];
  return *this;
}

KernelGrid& KernelGrid::operator*=(double factor) {
  for (double& v : weights_) v *= factor;
  return *this;
}

int kernel_radius(double sigma, double rho) {
  // 6 std along the derivative axis (std sigma / rho), 4.5 across it (sigma rho).
  return static_cast<int>(std::ceil(std::max(4.5 * sigma * rho, 6.0 * sigma / rho) - 1e-9));
}

KernelGrid aniso_gaussian_kernel(const FilterParams& p) {
  return sample_kernel(p, [](double, double g) { return g; });
}

KernelGrid foagdd_kernel(const FilterParams& p) {
  const double k = p.rho * p.rho / (p.sigma * p.sigma);
  return sample_kernel(p, [k](double u, double g) { return -k * u * g; });
}

KernelGrid soagdd_kernel(const FilterParams& p, DcCorrection dc) {
  const double k = p.rho * p.rho / (p.sigma * p.sigma);
  KernelGrid grid = sample_kernel(p, [k](double u, double g) { return k * (k * u * u - 1.0) * g; });
  if (dc == DcCorrection::Apply) {
    const double mean = grid.sum() / static_cast<double>(grid.weights().size());
    std::vector<double> w = grid.weights();
    for (double& v : w) v -= mean;
    grid = KernelGrid(grid.radius(), std::move(w));
  }
  return grid;
}

int FilterBank::max_kernel_side() const {
  int r = 0;
  for (double rho : rhos) r = std::max(r, kernel_radius(sigmas.empty() ? 0.0 : sigmas.back(), rho));
  return 2 * r + 1;
}

void FilterBank::validate() const {
  if (sigmas.empty()) throw InvalidArgument("FilterBank: no scales");
  if (rhos.empty()) throw InvalidArgument("FilterBank: no anisotropy factors");
  if (orientations < 1) throw InvalidArgument("FilterBank: need at least 1 orientation");
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0) || !std::isfinite(sigmas[i])) {
      throw InvalidArgument("FilterBank: scales must be positive and finite");
    }
    if (i > 0 && !(sigmas[i] > sigmas[i - 1])) {
      throw InvalidArgument("FilterBank: scales must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (!(rhos[i] >= 1.0) || !std::isfinite(rhos[i])) {
      throw InvalidArgument("FilterBank: anisotropy factors must be >= 1 and finite");
    }
    if (i > 0 && !(rhos[i] > rhos[i - 1])) {
      throw InvalidArgument("FilterBank: anisotropy factors must be strictly increasing");
    }
  }
}

FilterBank FilterBank::from_squares(const std::vector<double>& sigma_squares,
                                    const std::vector<double>& rho_squares, int orientations) {
  FilterBank bank;
  for (double v : sigma_squares) bank.sigmas.push_back(std::sqrt(v));
  for (double v : rho_squares) bank.rhos.push_back(std::sqrt(v));
  bank.orientations = orientations;
  bank.validate();
  return bank;
}

FilterBank FilterBank::defaults() {
  std::vector<double> s2;
  for (int v = 2; v <= 16; ++v) s2.push_back(v);
  return from_squares(s2, {1, 2, 3, 4, 5}, 8);
}

std::string format_kernel_dump(const KernelGrid& k, const FilterParams& p) {
  char buf[128];
  std::string out = "radius " + std::to_string(k.radius());
  std::snprintf(buf, sizeof(buf), " sigma %.9g rho %.9g theta %.9g\n", p.sigma, p.rho, p.theta);
  out += buf;
  for (int dy = -k.radius(); dy <= k.radius(); ++dy) {
    for (int dx = -k.radius(); dx <= k.radius(); ++dx) {
      std::snprintf(buf, sizeof(buf), "%.9g", k.at(dx, dy));
      out += buf;
      out.push_back(dx == k.radius() ? '\n' : ' ');
    }
  }
  return out;
}

}  // namespace soagdd
