#include "metatomo/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "metatomo/errors.hpp"
#include "metatomo/hermitian.hpp"
#include "metatomo/kernels.hpp"
#include "metatomo/lapack.hpp"

namespace metatomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// digits of x in base `radix`, most significant first
void decode(std::size_t x, std::size_t radix, int count, std::size_t* digits) {
  for (int t = count - 1; t >= 0; --t) {
    digits[t] = x % radix;
    x /= radix;
  }
}

// flattened column index from operator row/column indices: each photon
// contributes the digit j_t = u_t * D + v_t
std::size_t col_from_rc(std::size_t r, std::size_t c, std::size_t d, int photons) {
  std::size_t ur[8], vc[8];
  decode(r, d, photons, ur);
  decode(c, d, photons, vc);
  std::size_t x = 0;
  for (int t = 0; t < photons; ++t) x = x * (d * d) + (ur[t] * d + vc[t]);
  return x;
}

// nonzero flattened entries of the n x n Hermitian basis element `coord`
// (layout of hermitian_coord_layout), expressed in instrument column indices
std::vector<std::pair<std::size_t, cd>> basis_nonzeros(const HermCoord& coord, std::size_t d,
                                                       int photons) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (coord.kind) {
    case HermCoord::Kind::diag:
      return {{col_from_rc(coord.u, coord.u, d, photons), cd{1.0, 0.0}}};
    case HermCoord::Kind::re:
      return {{col_from_rc(coord.u, coord.v, d, photons), cd{inv_sqrt2, 0.0}},
              {col_from_rc(coord.v, coord.u, d, photons), cd{inv_sqrt2, 0.0}}};
    case HermCoord::Kind::im:
      return {{col_from_rc(coord.u, coord.v, d, photons), cd{0.0, inv_sqrt2}},
              {col_from_rc(coord.v, coord.u, d, photons), cd{0.0, -inv_sqrt2}}};
  }
  return {};
}

std::size_t swap_photons(std::size_t x, std::size_t d2) { return (x % d2) * d2 + x / d2; }

}  // namespace

std::size_t symmetric_sector_size(int dimension) {
  const std::size_t d2 = static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension);
  return d2 * (d2 + 1) / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> sector_pair_layout(std::size_t d2) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(d2 * (d2 + 1) / 2);
  for (std::size_t a = 0; a < d2; ++a) {
    for (std::size_t b = a; b < d2; ++b) out.push_back({a, b});
  }
  return out;
}

InstrumentMatrix build_single_photon(const TransmissionMatrix& t, const PixelBinning& binning) {
  if (binning.channel_count != t.channel_count()) {
    throw ValidationError("build_single_photon: binning does not match channel count");
  }
  const std::size_t d = t.dimension();
  const std::size_t pixels = binning.pixel_count();
  InstrumentMatrix m;
  m.photon_number = 1;
  m.dimension = static_cast<int>(d);
  m.pixel_count = static_cast<int>(pixels);
  m.entries = CMatrix(pixels, d * d);
  m.row_pixels.resize(pixels);
  std::vector<cd> channel_row(d);
  for (std::size_t l = 0; l < pixels; ++l) {
    m.row_pixels[l] = {static_cast<int>(l)};
    cd* acc = m.entries.data() + l * d * d;
    for (std::size_t c = binning.bin_start[l]; c < binning.bin_start[l + 1]; ++c) {
      for (std::size_t u = 0; u < d; ++u) channel_row[u] = t.entries(c, u);
      kern::herm_rank1_accum(channel_row.data(), d, acc);
    }
  }
  return m;
}

InstrumentMatrix tensor_power(const InstrumentMatrix& m1, int photon_number,
                              std::size_t memory_cap) {
  if (m1.photon_number != 1 || m1.reductions.click || m1.reductions.indistinguishable) {
    throw ValidationError("tensor_power: input must be an unreduced single-photon instrument");
  }
  if (photon_number < 1) throw ValidationError("tensor_power: photon number must be >= 1");
  if (photon_number == 1) return m1;

  const std::size_t l1 = m1.rows();
  const std::size_t d2 = m1.cols();
  const std::size_t rows = ipow(l1, photon_number);
  const std::size_t cols = ipow(d2, photon_number);
  const std::size_t bytes = rows * cols * sizeof(cd);
  if (bytes > memory_cap) {
    throw ResourceError("tensor_power: dense " + std::to_string(rows) + " x " +
                            std::to_string(cols) + " matrix needs " + std::to_string(bytes) +
                            " bytes (cap " + std::to_string(memory_cap) + ")",
                        bytes);
  }

  InstrumentMatrix m;
  m.photon_number = photon_number;
  m.dimension = m1.dimension;
  m.pixel_count = m1.pixel_count;
  m.entries = CMatrix(rows, cols);
  m.row_pixels.resize(rows);
  std::size_t ldig[8], cdig[8];
  for (std::size_t r = 0; r < rows; ++r) {
    decode(r, l1, photon_number, ldig);
    m.row_pixels[r].resize(static_cast<std::size_t>(photon_number));
    for (int t = 0; t < photon_number; ++t) m.row_pixels[r][t] = static_cast<int>(ldig[t]);
    for (std::size_t x = 0; x < cols; ++x) {
      decode(x, d2, photon_number, cdig);
      cd v{1.0, 0.0};
      for (int t = 0; t < photon_number; ++t) v *= m1.entries(ldig[t], cdig[t]);
      m.entries(r, x) = v;
    }
  }
  return m;
}

InstrumentMatrix reduce_click(const InstrumentMatrix& m) {
  if (m.photon_number == 1) {
    std::cerr << "reduce_click: single-photon instrument, nothing to remove\n";
    return m;
  }
  if (m.reductions.indistinguishable) {
    throw ValidationError("reduce_click: apply the click reduction before the indistinguishability reduction");
  }
  InstrumentMatrix out;
  out.photon_number = m.photon_number;
  out.dimension = m.dimension;
  out.pixel_count = m.pixel_count;
  out.reductions = m.reductions;
  out.reductions.click = true;

  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& idx = m.row_pixels[r];
    bool distinct = true;
    for (std::size_t i = 0; i < idx.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (idx[i] == idx[j]) {
          distinct = false;
          break;
        }
      }
    }
    if (distinct) keep.push_back(r);
  }
  out.entries = CMatrix(keep.size(), m.cols());
  out.row_pixels.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.row_pixels.push_back(m.row_pixels[keep[i]]);
    std::copy(m.entries.row(keep[i]).begin(), m.entries.row(keep[i]).end(),
              out.entries.row(i).begin());
  }
  return out;
}

InstrumentMatrix reduce_indistinguishable(const InstrumentMatrix& m) {
  if (m.photon_number != 2) {
    throw ValidationError("reduce_indistinguishable: only two-photon instruments are supported");
  }
  if (m.reductions.indistinguishable) {
    throw ValidationError("reduce_indistinguishable: already reduced");
  }
  const std::size_t d = static_cast<std::size_t>(m.dimension);
  const std::size_t d2 = d * d;
  const std::size_t full_cols = d2 * d2;

  InstrumentMatrix out;
  out.photon_number = 2;
  out.dimension = m.dimension;
  out.pixel_count = m.pixel_count;
  out.reductions = m.reductions;
  out.reductions.indistinguishable = true;

  // column classes: canonical representative has j1 <= j2
  out.class_of_index.assign(full_cols, 0);
  for (std::size_t x = 0; x < full_cols; ++x) {
    const std::size_t j1 = x / d2, j2 = x % d2;
    if (j1 <= j2) {
      out.class_of_index[x] = static_cast<std::uint32_t>(out.col_canonical.size());
      out.col_canonical.push_back(x);
    }
  }
  for (std::size_t x = 0; x < full_cols; ++x) {
    const std::size_t j1 = x / d2, j2 = x % d2;
    if (j1 > j2) out.class_of_index[x] = out.class_of_index[swap_photons(x, d2)];
  }

  // row classes: unordered pixel pairs, averaged
  std::unordered_map<std::uint64_t, std::size_t> row_of;
  row_of.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& p = m.row_pixels[r];
    row_of[(static_cast<std::uint64_t>(p[0]) << 32) | static_cast<std::uint32_t>(p[1])] = r;
  }
  std::vector<std::pair<std::size_t, std::ptrdiff_t>> merged;  // (row, partner or -1)
  std::vector<std::vector<int>> new_pixels;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& p = m.row_pixels[r];
    if (p[0] > p[1]) continue;
    std::ptrdiff_t partner = -1;
    if (p[0] != p[1]) {
      const auto it =
          row_of.find((static_cast<std::uint64_t>(p[1]) << 32) | static_cast<std::uint32_t>(p[0]));
      if (it != row_of.end()) partner = static_cast<std::ptrdiff_t>(it->second);
    }
    merged.push_back({r, partner});
    new_pixels.push_back(p);
  }

  out.entries = CMatrix(merged.size(), out.col_canonical.size());
  out.row_pixels = std::move(new_pixels);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const auto [r, partner] = merged[i];
    for (std::size_t c = 0; c < out.col_canonical.size(); ++c) {
      const std::size_t rep = out.col_canonical[c];
      const std::size_t swapped = swap_photons(rep, d2);
      cd v = m.entries(r, rep);
      if (swapped != rep) v += m.entries(r, swapped);
      if (partner >= 0) {
        cd w = m.entries(static_cast<std::size_t>(partner), rep);
        if (swapped != rep) w += m.entries(static_cast<std::size_t>(partner), swapped);
        v = 0.5 * (v + w);
      }
      out.entries(i, c) = v;
    }
  }
  return out;
}

std::vector<cd> flatten_for_instrument(const DensityMatrix& rho) {
  const std::size_t d = static_cast<std::size_t>(rho.dimension());
  const int photons = rho.photon_number();
  const std::size_t n = rho.hilbert_dim();
  std::vector<cd> out(n * n);
  std::size_t ur[8], vc[8];
  for (std::size_t r = 0; r < n; ++r) {
    decode(r, d, photons, ur);
    for (std::size_t c = 0; c < n; ++c) {
      decode(c, d, photons, vc);
      std::size_t x = 0;
      for (int t = 0; t < photons; ++t) x = x * (d * d) + (ur[t] * d + vc[t]);
      out[x] = rho.matrix()(r, c);
    }
  }
  return out;
}

std::vector<cd> flatten_reduced(const DensityMatrix& rho, const InstrumentMatrix& m) {
  if (!m.reductions.indistinguishable) {
    throw ValidationError("flatten_reduced: instrument is not indistinguishability-reduced");
  }
  const std::vector<cd> full = flatten_for_instrument(rho);
  std::vector<cd> out(m.col_canonical.size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = full[m.col_canonical[c]];
  return out;
}

RMatrix real_representation(const InstrumentMatrix& m) {
  const std::size_t d = static_cast<std::size_t>(m.dimension);
  if (!m.reductions.indistinguishable) {
    const std::size_t n = ipow(d, m.photon_number);
    const std::vector<HermCoord> layout = hermitian_coord_layout(n);
    RMatrix real(m.rows(), layout.size());
    for (std::size_t a = 0; a < layout.size(); ++a) {
      const auto nz = basis_nonzeros(layout[a], d, m.photon_number);
      for (std::size_t l = 0; l < m.rows(); ++l) {
        cd acc{0.0, 0.0};
        for (const auto& [x, val] : nz) acc += m.entries(l, x) * val;
        real(l, a) = acc.real();
      }
    }
    return real;
  }

  // indistinguishable two-photon: symmetric-sector basis
  //   (B_a (x) B_b + B_b (x) B_a)/sqrt(2)  for a < b,  B_a (x) B_a otherwise
  const std::size_t d2 = d * d;
  const std::vector<HermCoord> layout = hermitian_coord_layout(d);
  std::vector<std::vector<std::pair<std::size_t, cd>>> nz1(layout.size());
  for (std::size_t a = 0; a < layout.size(); ++a) nz1[a] = basis_nonzeros(layout[a], d, 1);

  const auto pairs = sector_pair_layout(d2);
  RMatrix real(m.rows(), pairs.size());
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::unordered_map<std::size_t, cd> element;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    element.clear();
    const double w = a == b ? 1.0 : inv_sqrt2;
    for (const auto& [ja, va] : nz1[a]) {
      for (const auto& [jb, vb] : nz1[b]) {
        element[ja * d2 + jb] += w * va * vb;
        if (a != b) element[jb * d2 + ja] += w * va * vb;
      }
    }
    for (std::size_t l = 0; l < m.rows(); ++l) {
      cd acc{0.0, 0.0};
      for (const auto& [x, val] : element) {
        const std::size_t j1 = x / d2, j2 = x % d2;
        if (j1 > j2) continue;  // reduced columns already carry the swapped term
        acc += m.entries(l, m.class_of_index[x]) * val;
      }
      real(l, p) = acc.real();
    }
  }
  return real;
}

ConditionReport condition_number(const RMatrix& real_form) {
  ConditionReport rep;
  if (real_form.rows() < real_form.cols()) {
    rep.kappa = kInf;
    rep.well_posed = false;
    rep.note = "under-determined: " + std::to_string(real_form.rows()) + " rows < " +
               std::to_string(real_form.cols()) + " parameters";
    return rep;
  }
  rep.spectrum = singular_values(real_form);
  rep.sigma_max = rep.spectrum.front();
  rep.sigma_min = rep.spectrum.back();
  if (rep.sigma_min <= 0.0) {
    rep.kappa = kInf;
    rep.well_posed = false;
    rep.note = "rank-deficient";
  } else {
    rep.kappa = rep.sigma_max / rep.sigma_min;
  }
  return rep;
}

ConditionReport condition_number(const InstrumentMatrix& m) {
  for (const cd& v : std::span<const cd>(m.entries.data(), m.entries.size())) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("condition_number: non-finite instrument entry");
    }
  }
  return condition_number(real_representation(m));
}

SicReference sic_reference(int dimension) {
  if (dimension < 1) throw ValidationError("sic_reference: dimension must be >= 1");
  const std::size_t d2 = static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension);
  const double d = static_cast<double>(dimension);
  SicReference out;
  out.kappa = std::sqrt(d + 1.0);
  out.lambda_large = 1.0 / d;
  out.lambda_small = 1.0 / (d * (d + 1.0));
  out.mult_large = 1;
  out.mult_small = d2 - 1;

  RMatrix gram(d2, d2);
  const double off = 1.0 / (d * d * (d + 1.0));
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) gram(i, j) = i == j ? 1.0 / (d * d) : off;
  }
  out.numeric_gram_eigenvalues = eigvalsh(gram);
  return out;
}

SicPovm sic_povm_explicit(int dimension) {
  if (dimension != 2) {
    throw ValidationError("sic_povm_explicit: only D = 2 (tetrahedral fiducials) is supported");
  }
  const double s = 1.0 / std::sqrt(3.0);
  const double dirs[4][3] = {
      {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  SicPovm out;
  out.elements.reserve(4);
  for (const auto& n : dirs) {
    // Pi = (I + n . sigma)/2, F = Pi / 2
    CMatrix f(2, 2);
    f(0, 0) = cd{(1.0 + n[2]) / 4.0, 0.0};
    f(1, 1) = cd{(1.0 - n[2]) / 4.0, 0.0};
    f(0, 1) = cd{n[0] / 4.0, -n[1] / 4.0};
    f(1, 0) = cd{n[0] / 4.0, n[1] / 4.0};
    out.elements.push_back(std::move(f));
  }

  // construction invariants: sum F = I, Tr(Pi_i Pi_j) = (2 delta + 1)/3
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      cd tr{0.0, 0.0};
      for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t v = 0; v < 2; ++v) tr += out.elements[i](u, v) * out.elements[j](v, u);
      const double want = (i == j ? 3.0 : 1.0) / 12.0;  // Tr(F_i F_j) = Tr(Pi Pi)/4
      if (std::abs(tr - cd{want, 0.0}) > 1e-12) {
        throw std::logic_error("sic_povm_explicit: trace condition violated");
      }
    }
  }

  InstrumentMatrix m;
  m.photon_number = 1;
  m.dimension = 2;
  m.pixel_count = 4;
  m.entries = CMatrix(4, 4);
  m.row_pixels.resize(4);
  for (std::size_t i = 0; i < 4; ++i) {
    m.row_pixels[i] = {static_cast<int>(i)};
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t v = 0; v < 2; ++v) m.entries(i, u * 2 + v) = std::conj(out.elements[i](u, v));
  }
  out.instrument = std::move(m);
  return out;
}

// --- operators --------------------------------------------------------------

DenseOperator::DenseOperator(RMatrix a) : a_(std::move(a)) {}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < a_.rows(); ++i) y[i] = kern::dot(a_.row(i).data(), x.data(), a_.cols());
}

void DenseOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t i = 0; i < a_.rows(); ++i) kern::axpy(y[i], a_.row(i).data(), x.data(), a_.cols());
}

double DenseOperator::operator_norm() const {
  if (norm_cache_ < 0.0) norm_cache_ = singular_values(a_).front();
  return norm_cache_;
}

TwoPhotonOperator::TwoPhotonOperator(const InstrumentMatrix& m1, Reductions reductions)
    : reductions_(reductions), dimension_(m1.dimension), pixel_count_(m1.pixel_count) {
  if (m1.photon_number != 1 || m1.reductions.click || m1.reductions.indistinguishable) {
    throw ValidationError("TwoPhotonOperator: needs an unreduced single-photon instrument");
  }
  m1_real_ = real_representation(m1);
  m1_real_t_ = transpose(m1_real_);
  const int l = pixel_count_;
  for (int l1 = 0; l1 < l; ++l1) {
    for (int l2 = 0; l2 < l; ++l2) {
      if (reductions_.click && l1 == l2) continue;
      if (reductions_.indistinguishable && l1 > l2) continue;
      row_pairs_.push_back({l1, l2});
    }
  }
}

std::size_t TwoPhotonOperator::cols() const {
  const std::size_t d2 = m1_real_.cols();
  return reductions_.indistinguishable ? d2 * (d2 + 1) / 2 : d2 * d2;
}

void TwoPhotonOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t d2 = m1_real_.cols();
  const std::size_t l = m1_real_.rows();
  RMatrix theta(d2, d2);
  if (reductions_.indistinguishable) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::size_t p = 0;
    for (std::size_t a = 0; a < d2; ++a) {
      theta(a, a) = x[p++];
      for (std::size_t b = a + 1; b < d2; ++b) {
        const double v = x[p++] * inv_sqrt2;
        theta(a, b) = v;
        theta(b, a) = v;
      }
    }
  } else {
    std::copy(x.begin(), x.end(), theta.data());
  }
  RMatrix w(l, d2), g(l, l);
  kern::gemm(l, d2, d2, m1_real_.data(), theta.data(), w.data());
  kern::gemm(l, d2, l, w.data(), m1_real_t_.data(), g.data());
  for (std::size_t p = 0; p < row_pairs_.size(); ++p) {
    y[p] = g(static_cast<std::size_t>(row_pairs_[p].first),
             static_cast<std::size_t>(row_pairs_[p].second));
  }
}

void TwoPhotonOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  const std::size_t d2 = m1_real_.cols();
  const std::size_t l = m1_real_.rows();
  RMatrix r(l, l);
  for (std::size_t p = 0; p < row_pairs_.size(); ++p) {
    r(static_cast<std::size_t>(row_pairs_[p].first),
      static_cast<std::size_t>(row_pairs_[p].second)) = y[p];
  }
  RMatrix v(d2, l), w(d2, d2);
  kern::gemm(d2, l, l, m1_real_t_.data(), r.data(), v.data());
  kern::gemm(d2, l, d2, v.data(), m1_real_.data(), w.data());
  if (reductions_.indistinguishable) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::size_t p = 0;
    for (std::size_t a = 0; a < d2; ++a) {
      x[p++] = w(a, a);
      for (std::size_t b = a + 1; b < d2; ++b) x[p++] = (w(a, b) + w(b, a)) * inv_sqrt2;
    }
  } else {
    std::copy(w.data(), w.data() + d2 * d2, x.begin());
  }
}

double TwoPhotonOperator::operator_norm() const {
  if (norm_cache_ >= 0.0) return norm_cache_;
  // power iteration on A^T A with a deterministic start
  std::vector<double> v(cols()), av(rows()), atav(cols());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + static_cast<double>(i % 7) / 7.0;
  double lambda = 0.0;
  for (int it = 0; it < 300; ++it) {
    const double inv = 1.0 / nrm2(v);
    kern::scal(inv, v.data(), v.size());
    apply(v, av);
    apply_adjoint(av, atav);
    const double next = kern::dot(v.data(), atav.data(), v.size());
    v.swap(atav);
    if (it > 10 && std::abs(next - lambda) <= 1e-13 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // slight inflation so step sizes derived from this stay safe
  norm_cache_ = std::sqrt(lambda) * (1.0 + 1e-6);
  return norm_cache_;
}

RMatrix TwoPhotonOperator::materialize() const {
  RMatrix a(rows(), cols());
  std::vector<double> e(cols(), 0.0), col(rows());
  for (std::size_t j = 0; j < cols(); ++j) {
    e[j] = 1.0;
    apply(e, col);
    for (std::size_t i = 0; i < rows(); ++i) a(i, j) = col[i];
    e[j] = 0.0;
  }
  return a;
}

}  // namespace metatomo
