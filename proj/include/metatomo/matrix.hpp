// Minimal dense row-major matrix types used across the toolkit.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "metatomo/kernels.hpp"

namespace metatomo {

using cd = std::complex<double>;

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

  bool operator==(const RMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cd{0.0, 0.0}) {}

  cd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  std::span<cd> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const cd> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cd> a_;
};

// c = a * b via the dispatched gemm kernel
RMatrix matmul(const RMatrix& a, const RMatrix& b);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
RMatrix transpose(const RMatrix& a);
CMatrix adjoint(const CMatrix& a);

// y = a * x
std::vector<double> apply(const RMatrix& a, std::span<const double> x);
std::vector<cd> apply(const CMatrix& a, std::span<const cd> x);

double frobenius_norm(const RMatrix& a);
double frobenius_norm(const CMatrix& a);
double nrm2(std::span<const double> v);

}  // namespace metatomo
