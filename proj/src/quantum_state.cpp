#include "metatomo/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "metatomo/errors.hpp"
#include "metatomo/lapack.hpp"
#include "metatomo/rng.hpp"

namespace metatomo {

namespace {

std::size_t hilbert_dimension(int dimension, int photon_number) {
  if (dimension < 1) throw ValidationError("density matrix: dimension must be >= 1");
  if (photon_number < 1) throw ValidationError("density matrix: photon number must be >= 1");
  std::size_t n = 1;
  for (int i = 0; i < photon_number; ++i) n *= static_cast<std::size_t>(dimension);
  return n;
}

}  // namespace

DensityMatrix DensityMatrix::from_pure(std::span<const cd> coefficients, int dimension,
                                       int photon_number) {
  const std::size_t n = hilbert_dimension(dimension, photon_number);
  if (coefficients.size() != n) {
    throw ValidationError("from_pure: expected " + std::to_string(n) + " coefficients");
  }
  double norm_sq = 0.0;
  for (const cd& c : coefficients) norm_sq += std::norm(c);
  if (norm_sq <= 0.0) throw ValidationError("from_pure: zero state vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  CMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rho(i, j) = coefficients[i] * std::conj(coefficients[j]) * (inv * inv);
    }
  }
  return DensityMatrix(std::move(rho), dimension, photon_number, false);
}

DensityMatrix DensityMatrix::mixed(
    std::span<const std::pair<double, std::vector<cd>>> components, int dimension,
    int photon_number) {
  const std::size_t n = hilbert_dimension(dimension, photon_number);
  if (components.empty()) throw ValidationError("mixed: no components");
  double psum = 0.0;
  for (const auto& [p, psi] : components) {
    if (p < 0.0) throw ValidationError("mixed: negative probability");
    if (psi.size() != n) throw ValidationError("mixed: component dimension mismatch");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-9) {
    throw ValidationError("mixed: probabilities sum to " + std::to_string(psum));
  }
  CMatrix rho(n, n);
  for (const auto& [p, psi] : components) {
    double norm_sq = 0.0;
    for (const cd& c : psi) norm_sq += std::norm(c);
    if (norm_sq <= 0.0) throw ValidationError("mixed: zero component state");
    const double w = p / norm_sq;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rho(i, j) += w * psi[i] * std::conj(psi[j]);
    }
  }
  return DensityMatrix(std::move(rho), dimension, photon_number, false);
}

DensityMatrix DensityMatrix::random_state(int dimension, int photon_number, int rank,
                                          std::uint64_t seed) {
  const std::size_t n = hilbert_dimension(dimension, photon_number);
  if (rank < 1 || static_cast<std::size_t>(rank) > n) {
    throw ValidationError("random_state: rank must be in [1, D^N]");
  }
  CounterRng rng(seed);
  CMatrix a(n, static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = rng.normal_complex();
  CMatrix rho(n, n);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cd s{0.0, 0.0};
      for (std::size_t r = 0; r < a.cols(); ++r) s += a(i, r) * std::conj(a(j, r));
      rho(i, j) = s;
      rho(j, i) = std::conj(s);
    }
    trace += rho(i, i).real();
  }
  for (std::size_t i = 0; i < rho.size(); ++i) rho.data()[i] /= trace;
  return DensityMatrix(std::move(rho), dimension, photon_number, false);
}

DensityMatrix DensityMatrix::from_matrix(CMatrix entries, int dimension, int photon_number,
                                         bool symmetric_sector) {
  const std::size_t n = hilbert_dimension(dimension, photon_number);
  if (entries.rows() != n || entries.cols() != n) {
    throw ValidationError("from_matrix: entries must be D^N x D^N");
  }
  return DensityMatrix(std::move(entries), dimension, photon_number, symmetric_sector);
}

double DensityMatrix::trace_error() const {
  cd tr{0.0, 0.0};
  for (std::size_t i = 0; i < entries_.rows(); ++i) tr += entries_(i, i);
  return std::abs(tr - cd{1.0, 0.0});
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    for (std::size_t j = i; j < entries_.cols(); ++j) {
      worst = std::max(worst, std::abs(entries_(i, j) - std::conj(entries_(j, i))));
    }
  }
  return worst;
}

double DensityMatrix::min_eigenvalue() const {
  return eigh(entries_).eigenvalues.front();
}

double DensityMatrix::swap_symmetry_error() const {
  if (photon_number_ != 2) return 0.0;
  const std::size_t d = static_cast<std::size_t>(dimension_);
  double worst = 0.0;
  // rho_{mn,ij} = rho_{ij,mn}: <m,i|rho|n,j> = <i,m|rho|j,n>
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t n = 0; n < d; ++n)
        for (std::size_t j = 0; j < d; ++j) {
          const cd a = entries_(m * d + i, n * d + j);
          const cd b = entries_(i * d + m, j * d + n);
          worst = std::max(worst, std::abs(a - b));
        }
  return worst;
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    for (std::size_t j = 0; j < entries_.cols(); ++j) {
      s += std::norm(entries_(i, j));
    }
  }
  return s;
}

void DensityMatrix::validate() const {
  if (hermiticity_error() >= 1e-12) throw ValidationError("density matrix is not Hermitian");
  if (trace_error() >= 1e-12) throw ValidationError("density matrix trace differs from 1");
  if (min_eigenvalue() < -1e-10) throw ValidationError("density matrix has a negative eigenvalue");
  if (symmetric_sector_ && swap_symmetry_error() >= 1e-12) {
    throw ValidationError("density matrix violates two-photon permutation symmetry");
  }
}

CMatrix hermitian_sqrt(const CMatrix& a, double clip_tolerance) {
  const EighResult e = eigh(a);
  const std::size_t n = a.rows();
  for (double w : e.eigenvalues) {
    if (w < -clip_tolerance) {
      throw ValidationError("hermitian_sqrt: eigenvalue " + std::to_string(w) +
                            " below clip tolerance");
    }
  }
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cd s{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        const double w = std::max(e.eigenvalues[k], 0.0);
        s += e.vectors(i, k) * std::conj(e.vectors(j, k)) * std::sqrt(w);
      }
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  }
  return out;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& rho_prime) {
  if (rho.hilbert_dim() != rho_prime.hilbert_dim()) {
    throw ValidationError("fidelity: dimension mismatch");
  }
  const CMatrix sq = hermitian_sqrt(rho.matrix());
  const CMatrix inner = matmul(matmul(sq, rho_prime.matrix()), sq);
  const EighResult e = eigh(inner);
  double s = 0.0;
  for (double w : e.eigenvalues) {
    if (w < -1e-10) throw ValidationError("fidelity: inner matrix significantly indefinite");
    s += std::sqrt(std::max(w, 0.0));
  }
  return std::clamp(s * s, 0.0, 1.0);
}

}  // namespace metatomo
