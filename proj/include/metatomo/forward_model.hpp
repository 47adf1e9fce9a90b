// Forward model: transmission matrix from HG coefficients to far-field
// k-channel amplitudes.
//
// The built-in backend is a thin-element approximation: each grid sample is
// multiplied by the flux-normalized transmission of the local layer stack
// (substrate -> ridge material or air of height h -> air), the field outside
// the device aperture is zero, and the result is projected onto propagating
// plane-wave channels by a DFT over the padded window. An import path accepts
// externally computed transmission matrices in the shared file format.
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "metatomo/hg_basis.hpp"
#include "metatomo/matrix.hpp"
#include "metatomo/metasurface.hpp"

namespace metatomo {

struct TransmissionMatrix {
  CMatrix entries;                // L_channels x D
  std::vector<double> channel_k;  // transverse wavenumber per row, rad/um, ascending
  double wavelength_nm = 0.0;
  std::string provenance;  // "thin-element" | "imported"
  std::uint64_t source_geometry_hash = 0;
  double window_um = 0.0;   // DFT window (structure + padding), 0 if imported
  double padding_um = 0.0;  // zero-field padding per side
  std::size_t grid_samples = 0;

  std::size_t channel_count() const { return entries.rows(); }
  std::size_t dimension() const { return entries.cols(); }
  // squared 2-norm of column m (detection probability of basis state m)
  double column_power(std::size_t m) const;
};

// Flux-normalized amplitude transmission of a single homogeneous layer at
// normal incidence; |t|^2 is the power transmittance of the stack
// n_in -> n_layer(h) -> n_out.
cd slab_transmission(double n_in, double n_layer, double n_out, double thickness_nm,
                     double wavelength_nm);

// Thin-element transmission matrix. The DFT window is the structure plus
// symmetric zero-field padding of half the structure width per side; at the
// 200 um / 810 nm device this yields exactly 987 propagating channels.
TransmissionMatrix thin_element_transmission(const MetasurfaceGeometry& geom,
                                             const HGBasis& basis);

// Contiguous partition of channels into pixels (unity fill factor).
struct PixelBinning {
  std::size_t channel_count = 0;
  std::vector<std::size_t> bin_start;  // size pixel_count + 1

  std::size_t pixel_count() const { return bin_start.empty() ? 0 : bin_start.size() - 1; }
  static PixelBinning contiguous(std::size_t channels, std::size_t pixels);
};

// Validated binning for this transmission matrix; the POVM-row summation it
// implies is applied by the instrument builder.
PixelBinning bin_channels(const TransmissionMatrix& t, std::size_t pixel_count);

// trace(T^dag T) / D: detection probability of the maximally mixed state.
double average_transmission(const TransmissionMatrix& t);

void export_transmission(const TransmissionMatrix& t, const std::filesystem::path& path);
TransmissionMatrix import_transmission(const std::filesystem::path& path);

}  // namespace metatomo
