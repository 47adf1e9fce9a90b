#include "metatomo/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace metatomo::kern {

#ifdef METATOMO_HAVE_AVX2
namespace avx2 {
double dot(const double*, const double*, std::size_t);
double sum(const double*, std::size_t);
double nrm2sq(const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scal(double, double*, std::size_t);
void cmul(const std::complex<double>*, const std::complex<double>*,
          std::complex<double>*, std::size_t);
void herm_rank1_accum(const std::complex<double>*, std::size_t,
                      std::complex<double>*);
void gemm(std::size_t, std::size_t, std::size_t, const double*, const double*,
          double*);
}  // namespace avx2
#endif

namespace {

struct Table {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*nrm2sq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*cmul)(const std::complex<double>*, const std::complex<double>*,
               std::complex<double>*, std::size_t);
  void (*herm_rank1_accum)(const std::complex<double>*, std::size_t,
                           std::complex<double>*);
  void (*gemm)(std::size_t, std::size_t, std::size_t, const double*,
               const double*, double*);
};

constexpr Table kScalarTable = {
    Isa::scalar,    scalar::dot,  scalar::sum,
    scalar::nrm2sq, scalar::axpy, scalar::scal,
    scalar::cmul,   scalar::herm_rank1_accum, scalar::gemm};

#ifdef METATOMO_HAVE_AVX2
constexpr Table kAvx2Table = {
    Isa::avx2,    avx2::dot,  avx2::sum,
    avx2::nrm2sq, avx2::axpy, avx2::scal,
    avx2::cmul,   avx2::herm_rank1_accum, avx2::gemm};
#endif

Table select_table() {
  const char* env = std::getenv("METATOMO_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalarTable;
#ifdef METATOMO_HAVE_AVX2
  const bool want_avx2 = env == nullptr || std::strcmp(env, "auto") == 0 ||
                         std::strcmp(env, "avx2") == 0;
  if (want_avx2 && avx2_supported()) return kAvx2Table;
#endif
  return kScalarTable;
}

const Table& table() {
  static const Table t = select_table();
  return t;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

double dot(const double* a, const double* b, std::size_t n) {
  return table().dot(a, b, n);
}
double sum(const double* a, std::size_t n) { return table().sum(a, n); }
double nrm2sq(const double* a, std::size_t n) { return table().nrm2sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  table().axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::size_t n) { table().scal(alpha, x, n); }
void cmul(const std::complex<double>* a, const std::complex<double>* b,
          std::complex<double>* out, std::size_t n) {
  table().cmul(a, b, out, n);
}
void herm_rank1_accum(const std::complex<double>* t, std::size_t d,
                      std::complex<double>* acc) {
  table().herm_rank1_accum(t, d, acc);
}
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c) {
  table().gemm(m, k, n, a, b, c);
}

}  // namespace metatomo::kern
