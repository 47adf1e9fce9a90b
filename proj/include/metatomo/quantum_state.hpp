// Density matrices for N photons in a D-dimensional Hermite-Gaussian basis.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "metatomo/matrix.hpp"

namespace metatomo {

class DensityMatrix {
 public:
  // Pure state |psi><psi| from D^N coefficients (normalized internally).
  static DensityMatrix from_pure(std::span<const cd> coefficients, int dimension,
                                 int photon_number);
  // Incoherent mixture sum_j p_j |psi_j><psi_j|; probabilities must sum to 1
  // within 1e-9.
  static DensityMatrix mixed(
      std::span<const std::pair<double, std::vector<cd>>> components, int dimension,
      int photon_number);
  // rho = A A^dag / tr(A A^dag) with A a D^N x rank matrix of iid standard
  // complex Gaussians; deterministic given the seed.
  static DensityMatrix random_state(int dimension, int photon_number, int rank,
                                    std::uint64_t seed);
  static DensityMatrix from_matrix(CMatrix entries, int dimension, int photon_number,
                                   bool symmetric_sector = false);

  const CMatrix& matrix() const { return entries_; }
  int dimension() const { return dimension_; }
  int photon_number() const { return photon_number_; }
  std::size_t hilbert_dim() const { return entries_.rows(); }
  bool symmetric_sector() const { return symmetric_sector_; }
  void set_symmetric_sector(bool flag) { symmetric_sector_ = flag; }

  double trace_error() const;        // |tr(rho) - 1|
  double hermiticity_error() const;  // max |rho - rho^dag|
  double min_eigenvalue() const;
  double swap_symmetry_error() const;  // two-photon only
  double purity() const;               // tr(rho^2)

  // Throws ValidationError if any physicality invariant is out of tolerance.
  void validate() const;

 private:
  DensityMatrix(CMatrix entries, int dimension, int photon_number, bool symmetric_sector)
      : entries_(std::move(entries)),
        dimension_(dimension),
        photon_number_(photon_number),
        symmetric_sector_(symmetric_sector) {}

  CMatrix entries_;
  int dimension_;
  int photon_number_;
  bool symmetric_sector_;
};

// Uhlmann fidelity (tr sqrt(sqrt(rho) rho' sqrt(rho)))^2 via Hermitian
// eigendecompositions; eigenvalues in [-1e-10, 0) are clipped to zero, more
// negative input is rejected.
double fidelity(const DensityMatrix& rho, const DensityMatrix& rho_prime);

// Hermitian square root used by the fidelity; exposed for tests.
CMatrix hermitian_sqrt(const CMatrix& a, double clip_tolerance = 1e-10);

}  // namespace metatomo
