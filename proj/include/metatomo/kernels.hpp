// Runtime-dispatched arithmetic kernels.
//
// Every primitive has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant selected once at startup. The environment
// variable METATOMO_SIMD ("scalar", "avx2", "auto") overrides detection.
// The two paths are equivalence-tested; FMA contraction means results may
// differ from the scalar path by a few ulps.
#pragma once

#include <complex>
#include <cstddef>

namespace metatomo::kern {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_supported();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
// out[i] = a[i] * b[i]
void cmul(const std::complex<double>* a, const std::complex<double>* b,
          std::complex<double>* out, std::size_t n);
// acc[u*d + v] += t[u] * conj(t[v])
void herm_rank1_accum(const std::complex<double>* t, std::size_t d,
                      std::complex<double>* acc);
// c = a * b, row-major, c is m x n, a is m x k, b is k x n (c overwritten)
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c);
}  // namespace scalar

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void cmul(const std::complex<double>* a, const std::complex<double>* b,
          std::complex<double>* out, std::size_t n);
void herm_rank1_accum(const std::complex<double>* t, std::size_t d,
                      std::complex<double>* acc);
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c);

}  // namespace metatomo::kern
