#include "metatomo/forward_model.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <numbers>

#include "metatomo/errors.hpp"
#include "metatomo/kernels.hpp"
#include "metatomo/matrix_io.hpp"

namespace metatomo {

namespace {

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex g_fftw_plan_mutex;

struct FftwPlan {
  fftw_plan plan;
  fftw_complex* buf;
  std::size_t n;

  explicit FftwPlan(std::size_t size) : n(size) {
    std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
    buf = fftw_alloc_complex(n);
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

cd slab_transmission(double n_in, double n_layer, double n_out, double thickness_nm,
                     double wavelength_nm) {
  const double r01 = (n_in - n_layer) / (n_in + n_layer);
  const double r12 = (n_layer - n_out) / (n_layer + n_out);
  const double t01 = 2.0 * n_in / (n_in + n_layer);
  const double t12 = 2.0 * n_layer / (n_layer + n_out);
  const double delta = 2.0 * std::numbers::pi * n_layer * thickness_nm / wavelength_nm;
  const cd phase = std::exp(cd{0.0, delta});
  const cd t_field = t01 * t12 * phase / (1.0 + r01 * r12 * phase * phase);
  return t_field * std::sqrt(n_out / n_in);
}

double TransmissionMatrix::column_power(std::size_t m) const {
  double s = 0.0;
  for (std::size_t l = 0; l < entries.rows(); ++l) s += std::norm(entries(l, m));
  return s;
}

TransmissionMatrix thin_element_transmission(const MetasurfaceGeometry& geom,
                                             const HGBasis& basis) {
  if (geom.widths_nm.empty()) throw ValidationError("thin_element_transmission: empty geometry");
  if (std::abs(basis.wavelength_nm() - geom.wavelength_nm) > 1e-9) {
    throw ValidationError("thin_element_transmission: basis and geometry wavelengths differ");
  }
  const double structure_um = geom.total_width_um();
  const double half_grid_um =
      basis.positions_um().empty() ? 0.0 : -basis.positions_um().front();
  if (2.0 * half_grid_um + basis.grid_spacing_um() < structure_um) {
    throw ValidationError("thin_element_transmission: basis grid does not cover the geometry width");
  }

  // Window = structure + half the structure width of zero-field padding per
  // side. dx targets 50 nm, rounded to a power-of-two sample count.
  const double padding_um = 0.5 * structure_um;
  const double window_um = structure_um + 2.0 * padding_um;
  const std::size_t n = next_pow2(static_cast<std::size_t>(std::ceil(window_um / 0.05)));
  const double dx_um = window_um / static_cast<double>(n);
  const double lambda_um = geom.wavelength_nm / 1000.0;

  // local screen values: air layer over the gaps, ridge material over ridges
  const cd t_gap = slab_transmission(geom.substrate_index, 1.0, 1.0, geom.height_nm,
                                     geom.wavelength_nm);
  const cd t_ridge = slab_transmission(geom.substrate_index, geom.ridge_index, 1.0,
                                       geom.height_nm, geom.wavelength_nm);

  std::vector<double> x_um(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_um[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * dx_um;
  }

  std::vector<double> edges_nm(geom.widths_nm.size() + 1, 0.0);
  for (std::size_t i = 0; i < geom.widths_nm.size(); ++i) {
    edges_nm[i + 1] = edges_nm[i] + geom.widths_nm[i];
  }
  const double left_nm = -structure_um * 500.0;  // -W/2 in nm

  std::vector<cd> screen(n, cd{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    const double pos_nm = x_um[i] * 1000.0 - left_nm;
    if (pos_nm < 0.0 || pos_nm > edges_nm.back()) continue;
    auto it = std::upper_bound(edges_nm.begin(), edges_nm.end(), pos_nm);
    std::size_t elem = static_cast<std::size_t>(std::distance(edges_nm.begin(), it));
    elem = elem == 0 ? 0 : elem - 1;
    if (elem >= geom.widths_nm.size()) elem = geom.widths_nm.size() - 1;
    screen[i] = geom.element_kind(elem) == ElementKind::ridge ? t_ridge : t_gap;
  }

  // propagating channels: |k_q| <= 2 pi / lambda in the exit medium (air)
  const double k_max = 2.0 * std::numbers::pi / lambda_um;
  const long half = static_cast<long>(n) / 2;
  std::vector<long> qs;
  for (long q = -half; q < half; ++q) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(q) / window_um;
    if (std::abs(k) <= k_max) qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());

  TransmissionMatrix out;
  out.wavelength_nm = geom.wavelength_nm;
  out.provenance = "thin-element";
  out.source_geometry_hash = geometry_hash(geom);
  out.window_um = window_um;
  out.padding_um = padding_um;
  out.grid_samples = n;
  out.channel_k.resize(qs.size());
  out.entries = CMatrix(qs.size(), static_cast<std::size_t>(basis.order_count()));

  FftwPlan fft(n);
  std::vector<double> psi(n);
  std::vector<cd> u(n);
  const double amp = dx_um / std::sqrt(window_um);
  const double x0 = x_um.front();

  for (int m = 0; m < basis.order_count(); ++m) {
    HGBasis::sample_mode(m, basis.waist_um(), x_um, psi);
    const double norm = std::sqrt(kern::nrm2sq(psi.data(), n) * dx_um);
    std::vector<cd> mode(n);
    for (std::size_t i = 0; i < n; ++i) mode[i] = psi[i] / norm;
    kern::cmul(screen.data(), mode.data(), u.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      fft.buf[i][0] = u[i].real();
      fft.buf[i][1] = u[i].imag();
    }
    fftw_execute(fft.plan);
    for (std::size_t row = 0; row < qs.size(); ++row) {
      const long q = qs[row];
      const double k = 2.0 * std::numbers::pi * static_cast<double>(q) / window_um;
      out.channel_k[row] = k;
      const std::size_t bin = static_cast<std::size_t>(q < 0 ? q + static_cast<long>(n) : q);
      const cd raw{fft.buf[bin][0], fft.buf[bin][1]};
      // phase restores the transform about the physical origin (grid is
      // cell-centered, FFT assumes samples start at index 0)
      out.entries(row, static_cast<std::size_t>(m)) = amp * raw * std::exp(cd{0.0, -k * x0});
    }
  }
  return out;
}

PixelBinning PixelBinning::contiguous(std::size_t channels, std::size_t pixels) {
  if (pixels < 1 || pixels > channels) {
    throw ValidationError("binning: pixel count must be in [1, channel count]");
  }
  PixelBinning b;
  b.channel_count = channels;
  b.bin_start.resize(pixels + 1);
  const std::size_t base = channels / pixels;
  const std::size_t extra = channels % pixels;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < pixels; ++i) {
    b.bin_start[i] = pos;
    pos += base + (i < extra ? 1 : 0);
  }
  b.bin_start[pixels] = pos;
  return b;
}

PixelBinning bin_channels(const TransmissionMatrix& t, std::size_t pixel_count) {
  return PixelBinning::contiguous(t.channel_count(), pixel_count);
}

double average_transmission(const TransmissionMatrix& t) {
  double total = 0.0;
  for (std::size_t m = 0; m < t.dimension(); ++m) total += t.column_power(m);
  return total / static_cast<double>(t.dimension());
}

void export_transmission(const TransmissionMatrix& t, const std::filesystem::path& path) {
  MatrixFileHeader h;
  h.kind = "transmission";
  h.rows = t.entries.rows();
  h.cols = t.entries.cols();
  h.metadata["wavelength_nm"] = t.wavelength_nm;
  h.metadata["provenance"] = t.provenance;
  h.metadata["source_geometry_hash"] = t.source_geometry_hash;
  h.metadata["window_um"] = t.window_um;
  h.metadata["padding_um"] = t.padding_um;
  h.metadata["grid_samples"] = t.grid_samples;
  h.metadata["channel_k"] = t.channel_k;
  write_matrix_file(path, h, std::span<const cd>(t.entries.data(), t.entries.size()));
}

TransmissionMatrix import_transmission(const std::filesystem::path& path) {
  const MatrixFile f = read_matrix_file(path);
  if (f.header.kind != "transmission") {
    throw ValidationError("import_transmission: file kind is \"" + f.header.kind + "\"");
  }
  TransmissionMatrix t;
  t.entries = f.as_complex_matrix();
  t.provenance = "imported";
  const auto& md = f.header.metadata;
  t.wavelength_nm = md.value("wavelength_nm", 0.0);
  t.source_geometry_hash = md.value("source_geometry_hash", std::uint64_t{0});
  t.window_um = md.value("window_um", 0.0);
  t.padding_um = md.value("padding_um", 0.0);
  t.grid_samples = md.value("grid_samples", std::size_t{0});
  if (md.contains("channel_k")) t.channel_k = md["channel_k"].get<std::vector<double>>();

  // passivity: tolerate round-off-level violations, warn on small ones
  for (std::size_t m = 0; m < t.dimension(); ++m) {
    const double p = t.column_power(m);
    if (p > 1.0 + 1e-6) {
      throw ValidationError("import_transmission: column " + std::to_string(m) +
                            " has power " + std::to_string(p) + " > 1 (passivity violated)");
    }
    if (p > 1.0 + 1e-9) {
      std::cerr << "import_transmission: warning: column " << m << " power " << p
                << " slightly exceeds 1\n";
    }
  }
  return t;
}

}  // namespace metatomo
