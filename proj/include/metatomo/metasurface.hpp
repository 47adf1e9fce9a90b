// Random 1-D freeform metasurface geometries: generation, validation, and a
// JSON file format for interchange.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace metatomo {

enum class ElementKind { gap, ridge };

struct MetasurfaceGeometry {
  // Alternating gap/ridge widths, convention: first element is a gap at the
  // left edge (recorded in the file format so imports stay unambiguous).
  std::vector<double> widths_nm;
  double height_nm = 0.0;
  double min_feature_nm = 0.0;
  double ridge_index = 3.74;
  double substrate_index = 1.45;
  double wavelength_nm = 810.0;
  std::uint64_t rng_seed = 0;
  ElementKind first_element = ElementKind::gap;

  double total_width_um() const;
  double realized_mean_nm() const;
  ElementKind element_kind(std::size_t index) const;
};

struct GenerateParams {
  double mean_size_nm;      // mu, average meta-atom size
  double min_feature_nm;    // d_min, fabrication constraint (0 disables)
  double height_nm;         // h
  double target_width_um;   // device width, generation stops exactly here
  double wavelength_nm = 810.0;
  double ridge_index = 3.74;
  double substrate_index = 1.45;
};

// Widths are d_j = d_min + r_j with r_j ~ N(mu - d_min, (mu - d_min)^2);
// negative draws are rejected and redrawn, which keeps d_j >= d_min exactly
// but lifts the realized mean slightly above mu (reported by
// realized_mean_nm). Deterministic given the seed.
MetasurfaceGeometry generate_random(const GenerateParams& params, std::uint64_t seed);

struct Violation {
  std::string message;
  std::ptrdiff_t width_index;  // -1 when not tied to a specific element
};

// Returns every violation found, not just the first. Pass target_width_um > 0
// to also check the total-width invariant.
std::vector<Violation> validate(const MetasurfaceGeometry& geom, double target_width_um = 0.0);

// Geometry file: UTF-8 JSON, widths kept at full decimal precision so the
// round trip is exact. Unknown keys are rejected.
std::string serialize(const MetasurfaceGeometry& geom);
MetasurfaceGeometry deserialize(std::string_view text);

// FNV-1a over the canonical serialization; used for provenance tags.
std::uint64_t geometry_hash(const MetasurfaceGeometry& geom);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace metatomo
