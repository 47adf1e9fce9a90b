// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached after a
// runtime cpuid check, so the rest of the project can stay baseline x86-64.
#include "metatomo/kernels.hpp"

#ifdef METATOMO_HAVE_AVX2

#include <immintrin.h>

#include <cstring>

namespace metatomo::kern::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

double nrm2sq(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(a + i);
    __m256d x1 = _mm256_loadu_pd(a + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void cmul(const std::complex<double>* a, const std::complex<double>* b,
          std::complex<double>* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  // two complex values per 256-bit lane
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    __m256d ar = _mm256_movedup_pd(va);          // [ar0 ar0 ar1 ar1]
    __m256d ai = _mm256_unpackhi_pd(va, va);     // [ai0 ai0 ai1 ai1]
    __m256d bs = _mm256_permute_pd(vb, 0x5);     // [bi0 br0 bi1 br1]
    _mm256_storeu_pd(po + 2 * i,
                     _mm256_fmaddsub_pd(ar, vb, _mm256_mul_pd(ai, bs)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void herm_rank1_accum(const std::complex<double>* t, std::size_t d,
                      std::complex<double>* acc) {
  const double* pt = reinterpret_cast<const double*>(t);
  double* pa = reinterpret_cast<double*>(acc);
  for (std::size_t u = 0; u < d; ++u) {
    const __m256d ur = _mm256_set1_pd(pt[2 * u]);
    const __m256d ui = _mm256_set1_pd(pt[2 * u + 1]);
    double* row = pa + 2 * u * d;
    std::size_t v = 0;
    for (; v + 2 <= d; v += 2) {
      // tu * conj(tv): re = ur*vr + ui*vi, im = ui*vr - ur*vi
      __m256d tv = _mm256_loadu_pd(pt + 2 * v);                     // [vr0 vi0 vr1 vi1]
      __m256d vr = _mm256_movedup_pd(tv);                           // [vr0 vr0 vr1 vr1]
      __m256d vi = _mm256_unpackhi_pd(tv, tv);                      // [vi0 vi0 vi1 vi1]
      __m256d re = _mm256_fmadd_pd(ur, vr, _mm256_mul_pd(ui, vi));  // both lanes re
      __m256d im = _mm256_fmsub_pd(ui, vr, _mm256_mul_pd(ur, vi));  // both lanes im
      __m256d lo = _mm256_unpacklo_pd(re, im);  // [re0 im0 re1 im1]
      __m256d cur = _mm256_loadu_pd(row + 2 * v);
      _mm256_storeu_pd(row + 2 * v, _mm256_add_pd(cur, lo));
    }
    for (; v < d; ++v) {
      const std::complex<double> p = t[u] * std::conj(t[v]);
      row[2 * v] += p.real();
      row[2 * v + 1] += p.imag();
    }
  }
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      const __m256d va = _mm256_set1_pd(aip);
      const double* bp = b + p * n;
      std::size_t j = 0;
      for (; j + 8 <= n; j += 8) {
        __m256d c0 = _mm256_loadu_pd(ci + j);
        __m256d c1 = _mm256_loadu_pd(ci + j + 4);
        c0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(bp + j), c0);
        c1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(bp + j + 4), c1);
        _mm256_storeu_pd(ci + j, c0);
        _mm256_storeu_pd(ci + j + 4, c1);
      }
      for (; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

}  // namespace metatomo::kern::avx2

#endif  // METATOMO_HAVE_AVX2
