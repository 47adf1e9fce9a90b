#include "metatomo/hg_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace metatomo {

HGBasis::HGBasis(int order_count, double waist_um, double wavelength_nm, GridSpec grid)
    : order_count_(order_count), waist_um_(waist_um), wavelength_nm_(wavelength_nm) {
  if (order_count < 1) throw std::invalid_argument("HGBasis: order count must be >= 1");
  if (waist_um <= 0.0) throw std::invalid_argument("HGBasis: waist must be positive");
  if (wavelength_nm <= 0.0) throw std::invalid_argument("HGBasis: wavelength must be positive");
  if (grid.sample_count < 16) throw std::invalid_argument("HGBasis: grid too coarse");
  if (grid.half_width_um <= 0.0) throw std::invalid_argument("HGBasis: grid half-width must be positive");
  const std::size_t n = grid.sample_count;
  dx_um_ = 2.0 * grid.half_width_um / static_cast<double>(n);
  x_um_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_um_[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * dx_um_;
  }
}

GridSpec HGBasis::default_grid(int order_count, double waist_um) {
  const double turning_um = waist_um * std::sqrt(std::max(0.5, order_count - 0.5));
  return {std::max(100.0, 1.5 * turning_um), 4096};
}

HGBasis HGBasis::with_default_grid(int order_count, double waist_um, double wavelength_nm) {
  return HGBasis(order_count, waist_um, wavelength_nm, default_grid(order_count, waist_um));
}

void HGBasis::sample_mode(int m, double waist_um, std::span<const double> x_um,
                          std::span<double> out) {
  // Orthonormal quantum-oscillator recurrence in xi = sqrt(2) x / w0:
  //   phi_0 = pi^{-1/4} exp(-xi^2/2)
  //   phi_{k+1} = (sqrt(2) xi phi_k - sqrt(k) phi_{k-1}) / sqrt(k+1)
  // stays O(1) for any order, unlike raw Hermite polynomial values.
  const double inv_w0 = std::numbers::sqrt2 / waist_um;
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < x_um.size(); ++i) {
    const double xi = x_um[i] * inv_w0;
    double prev = 0.0;
    double cur = norm0 * std::exp(-0.5 * xi * xi);
    for (int k = 0; k < m; ++k) {
      const double next = (std::numbers::sqrt2 * xi * cur - std::sqrt(static_cast<double>(k)) * prev) /
                          std::sqrt(static_cast<double>(k + 1));
      prev = cur;
      cur = next;
    }
    out[i] = cur;
  }
}

std::vector<double> HGBasis::mode(int m) const {
  if (m < 0 || m >= order_count_) {
    throw std::domain_error("HGBasis::mode: order out of range");
  }
  std::vector<double> psi(x_um_.size());
  sample_mode(m, waist_um_, x_um_, psi);
  const double norm = std::sqrt(kern::nrm2sq(psi.data(), psi.size()) * dx_um_);
  kern::scal(1.0 / norm, psi.data(), psi.size());
  return psi;
}

const RMatrix& HGBasis::basis_matrix() const {
  if (cache_.rows() == x_um_.size()) return cache_;
  RMatrix b(x_um_.size(), static_cast<std::size_t>(order_count_));
  for (int m = 0; m < order_count_; ++m) {
    const std::vector<double> psi = mode(m);
    for (std::size_t i = 0; i < psi.size(); ++i) b(i, static_cast<std::size_t>(m)) = psi[i];
  }
  cache_ = std::move(b);
  return cache_;
}

double HGBasis::max_orthonormality_error() const {
  const RMatrix& b = basis_matrix();
  const std::size_t d = b.cols();
  std::vector<std::vector<double>> cols(d);
  for (std::size_t m = 0; m < d; ++m) {
    cols[m].resize(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) cols[m][i] = b(i, m);
  }
  double worst = 0.0;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = m; n < d; ++n) {
      const double g = kern::dot(cols[m].data(), cols[n].data(), b.rows()) * dx_um_;
      worst = std::max(worst, std::abs(g - (m == n ? 1.0 : 0.0)));
    }
  }
  return worst;
}

int sign_change_count(std::span<const double> samples) {
  int count = 0;
  double prev = 0.0;
  for (double v : samples) {
    if (v == 0.0) continue;
    if (prev != 0.0 && std::signbit(v) != std::signbit(prev)) ++count;
    prev = v;
  }
  return count;
}

}  // namespace metatomo
