#include "metatomo/lapack.hpp"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace metatomo {

namespace {
[[noreturn]] void fail(const char* routine, int info) {
  throw std::runtime_error(std::string(routine) + " failed, info=" + std::to_string(info));
}
}  // namespace

SvdResult svd(const RMatrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int r = std::min(m, n);
  RMatrix work = a;
  SvdResult out;
  out.singular_values.resize(static_cast<std::size_t>(r));
  out.u = RMatrix(a.rows(), static_cast<std::size_t>(r));
  out.vt = RMatrix(static_cast<std::size_t>(r), a.cols());
  int info = LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'S', m, n, work.data(), n,
                            out.singular_values.data(), out.u.data(), r,
                            out.vt.data(), n);
  if (info != 0) fail("dgesdd", info);
  return out;
}

std::vector<double> singular_values(const RMatrix& a) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  RMatrix work = a;
  std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
  int info = LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'N', m, n, work.data(), n,
                            s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) fail("dgesdd", info);
  return s;
}

EighResult eigh(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EighResult out;
  out.vectors = a;
  out.eigenvalues.resize(a.rows());
  int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'U', n,
                           reinterpret_cast<lapack_complex_double*>(out.vectors.data()),
                           n, out.eigenvalues.data());
  if (info != 0) fail("zheev", info);
  return out;
}

std::vector<double> eigvalsh(const RMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigvalsh: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RMatrix work = a;
  std::vector<double> w(a.rows());
  int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data(), n, w.data());
  if (info != 0) fail("dsyev", info);
  return w;
}

}  // namespace metatomo
