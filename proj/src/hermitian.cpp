#include "metatomo/hermitian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace metatomo {

std::vector<HermCoord> hermitian_coord_layout(std::size_t n) {
  std::vector<HermCoord> out;
  out.reserve(n * n);
  for (std::size_t u = 0; u < n; ++u) out.push_back({HermCoord::Kind::diag, u, u});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      out.push_back({HermCoord::Kind::re, u, v});
      out.push_back({HermCoord::Kind::im, u, v});
    }
  }
  return out;
}

std::vector<double> theta_from_matrix(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("theta_from_matrix: matrix not square");
  const std::size_t n = a.rows();
  std::vector<double> theta(n * n);
  std::size_t idx = 0;
  for (std::size_t u = 0; u < n; ++u) theta[idx++] = a(u, u).real();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      theta[idx++] = std::numbers::sqrt2 * a(u, v).real();
      theta[idx++] = std::numbers::sqrt2 * a(u, v).imag();
    }
  }
  return theta;
}

CMatrix matrix_from_theta(std::span<const double> theta, std::size_t n) {
  if (theta.size() != n * n) throw std::invalid_argument("matrix_from_theta: wrong coordinate count");
  CMatrix a(n, n);
  std::size_t idx = 0;
  for (std::size_t u = 0; u < n; ++u) a(u, u) = theta[idx++];
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const cd val{theta[idx] * inv_sqrt2, theta[idx + 1] * inv_sqrt2};
      idx += 2;
      a(u, v) = val;
      a(v, u) = std::conj(val);
    }
  }
  return a;
}

std::vector<cd> vec_row_major(const CMatrix& a) {
  return {a.data(), a.data() + a.size()};
}

CMatrix unvec_row_major(std::span<const cd> v, std::size_t n) {
  if (v.size() != n * n) throw std::invalid_argument("unvec_row_major: wrong length");
  CMatrix a(n, n);
  for (std::size_t i = 0; i < v.size(); ++i) a.data()[i] = v[i];
  return a;
}

}  // namespace metatomo
