#include "metatomo/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace metatomo {

RMatrix matmul(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  RMatrix c(a.rows(), b.cols());
  kern::gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const cd aip = a(i, p);
      if (aip == cd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aip * b(p, j);
    }
  }
  return c;
}

RMatrix transpose(const RMatrix& a) {
  RMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

std::vector<double> apply(const RMatrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("apply: shape mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kern::dot(a.row(i).data(), x.data(), a.cols());
  return y;
}

std::vector<cd> apply(const CMatrix& a, std::span<const cd> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("apply: shape mismatch");
  std::vector<cd> y(a.rows(), cd{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cd s{0.0, 0.0};
    const cd* row = a.data() + i * a.cols();
    for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double frobenius_norm(const RMatrix& a) {
  return std::sqrt(kern::nrm2sq(a.data(), a.size()));
}

double frobenius_norm(const CMatrix& a) {
  return std::sqrt(kern::nrm2sq(reinterpret_cast<const double*>(a.data()), 2 * a.size()));
}

double nrm2(std::span<const double> v) {
  return std::sqrt(kern::nrm2sq(v.data(), v.size()));
}

}  // namespace metatomo
