// Instrument matrices: the real-linear maps from flattened density matrices
// to measurement vectors, their N-photon Kronecker extensions, detector and
// indistinguishability reductions, and conditioning analysis.
//
// Complex entries follow M_{l,(u,v)} = sum_{channels c in bin l} T_cu T*_cv;
// column x of an N-photon matrix encodes the digit string (j_1..j_N) with
// j = u*D + v, matching the row-major flattening of the density matrix.
// Singular spectra are always computed in isometric real coordinates
// (diagonal reals plus sqrt(2)-weighted off-diagonal re/im pairs), which
// preserves the spectrum of the complex flattened convention because every
// POVM row is Hermitian.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "metatomo/forward_model.hpp"
#include "metatomo/matrix.hpp"
#include "metatomo/quantum_state.hpp"

namespace metatomo {

struct Reductions {
  bool click = false;
  bool indistinguishable = false;

  bool operator==(const Reductions&) const = default;
};

struct InstrumentMatrix {
  CMatrix entries;
  int photon_number = 1;
  int dimension = 0;  // D
  int pixel_count = 0;  // L
  Reductions reductions;
  // pixel multi-index (l_1..l_N) per row
  std::vector<std::vector<int>> row_pixels;
  // indistinguishable reduction: canonical flattened index per column, and
  // the column class of every unreduced flattened index
  std::vector<std::size_t> col_canonical;
  std::vector<std::uint32_t> class_of_index;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
};

// Default cap for materializing N-photon matrices (2 GiB).
inline constexpr std::size_t kDefaultMemoryCap = std::size_t{2} << 30;

// Binned single-photon instrument (Eq.-15-style rows summed per pixel bin).
InstrumentMatrix build_single_photon(const TransmissionMatrix& t, const PixelBinning& binning);

// Kronecker power M^(1) -> M^(N), dense. Throws ResourceError when the dense
// result would exceed memory_cap bytes; the matrix-free TwoPhotonOperator is
// the path for large problems.
InstrumentMatrix tensor_power(const InstrumentMatrix& m1, int photon_number,
                              std::size_t memory_cap = kDefaultMemoryCap);

// Drop every row whose pixel multi-index has a repeated pixel (click
// detectors see only fully nonlocal correlations). N = 1 is a warned no-op.
InstrumentMatrix reduce_click(const InstrumentMatrix& m);

// Two-photon permutation-symmetry reduction: rows averaged across swapped
// pixel pairs, columns merged onto canonical representatives. The symmetric
// sector keeps D^2 (D^2 + 1) / 2 independent real parameters.
InstrumentMatrix reduce_indistinguishable(const InstrumentMatrix& m);

std::size_t symmetric_sector_size(int dimension);

// Isometric real form of the instrument (rows x real-parameter count);
// the basis ordering matches theta_from_matrix / sector_pair_layout.
RMatrix real_representation(const InstrumentMatrix& m);

// (a, b) pairs with a <= b over the single-photon Hermitian coordinate
// indices; the column layout of indistinguishable-reduced real forms.
std::vector<std::pair<std::size_t, std::size_t>> sector_pair_layout(std::size_t d2);

// Flatten a density matrix into the instrument's column layout.
std::vector<cd> flatten_for_instrument(const DensityMatrix& rho);
// Reduced flattening: canonical entries only (indistinguishable columns).
std::vector<cd> flatten_reduced(const DensityMatrix& rho, const InstrumentMatrix& m);

struct ConditionReport {
  double kappa = 0.0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  std::vector<double> spectrum;  // descending
  bool well_posed = true;
  std::string note;
};

ConditionReport condition_number(const RMatrix& real_form);
ConditionReport condition_number(const InstrumentMatrix& m);

struct SicReference {
  double kappa;                // sqrt(D + 1)
  double lambda_large;         // 1/D, multiplicity 1
  double lambda_small;         // 1/(D (D+1)), multiplicity D^2 - 1
  std::size_t mult_large;
  std::size_t mult_small;
  std::vector<double> numeric_gram_eigenvalues;  // ascending, from the explicit Gram
};

// Analytic SIC-POVM reference conditioning plus a numeric check of the
// explicit equicorrelation Gram.
SicReference sic_reference(int dimension);

struct SicPovm {
  std::vector<CMatrix> elements;  // the D^2 POVM elements F_i = Pi_i / D
  InstrumentMatrix instrument;
};

// Explicit tetrahedral SIC-POVM; only D = 2 is supported.
SicPovm sic_povm_explicit(int dimension);

// --- matrix-free two-photon operator ---------------------------------------

// Real-linear measurement operator interface used by the reconstruction
// solvers; coordinates are the isometric real parameterization.
class MeasurementOperator {
 public:
  virtual ~MeasurementOperator() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;
  // largest singular value (exact or a certified upper estimate)
  virtual double operator_norm() const = 0;
};

class DenseOperator final : public MeasurementOperator {
 public:
  explicit DenseOperator(RMatrix a);
  std::size_t rows() const override { return a_.rows(); }
  std::size_t cols() const override { return a_.cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  double operator_norm() const override;
  const RMatrix& matrix() const { return a_; }

 private:
  RMatrix a_;
  mutable double norm_cache_ = -1.0;
};

// M^(2) = M1 (x) M1 applied through the factorization
// Gamma = m1 Theta m1^T without materializing L^2 x D^4 entries, with
// optional click-row removal and symmetric-sector coordinates.
class TwoPhotonOperator final : public MeasurementOperator {
 public:
  TwoPhotonOperator(const InstrumentMatrix& m1, Reductions reductions);

  std::size_t rows() const override { return row_pairs_.size(); }
  std::size_t cols() const override;
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  double operator_norm() const override;

  const std::vector<std::pair<int, int>>& row_pairs() const { return row_pairs_; }
  Reductions reductions() const { return reductions_; }
  int dimension() const { return dimension_; }
  int pixel_count() const { return pixel_count_; }

  // Dense materialization (tests); rows x cols as apply() sees them.
  RMatrix materialize() const;

 private:
  RMatrix m1_real_;    // L x D^2
  RMatrix m1_real_t_;  // D^2 x L
  Reductions reductions_;
  int dimension_ = 0;
  int pixel_count_ = 0;
  std::vector<std::pair<int, int>> row_pairs_;
  mutable double norm_cache_ = -1.0;
};

}  // namespace metatomo
