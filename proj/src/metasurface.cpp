#include "metatomo/metasurface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "metatomo/errors.hpp"
#include "metatomo/rng.hpp"

namespace metatomo {

double MetasurfaceGeometry::total_width_um() const {
  return std::accumulate(widths_nm.begin(), widths_nm.end(), 0.0) / 1000.0;
}

double MetasurfaceGeometry::realized_mean_nm() const {
  if (widths_nm.empty()) return 0.0;
  return std::accumulate(widths_nm.begin(), widths_nm.end(), 0.0) /
         static_cast<double>(widths_nm.size());
}

ElementKind MetasurfaceGeometry::element_kind(std::size_t index) const {
  const bool even = index % 2 == 0;
  if (first_element == ElementKind::gap) return even ? ElementKind::gap : ElementKind::ridge;
  return even ? ElementKind::ridge : ElementKind::gap;
}

MetasurfaceGeometry generate_random(const GenerateParams& params, std::uint64_t seed) {
  if (params.mean_size_nm <= params.min_feature_nm) {
    throw ValidationError("generate_random: mean size must exceed the minimum feature (degenerate distribution)");
  }
  if (params.min_feature_nm < 0.0) throw ValidationError("generate_random: negative minimum feature");
  if (params.height_nm < 0.0) throw ValidationError("generate_random: negative height");
  if (params.target_width_um <= 0.0) throw ValidationError("generate_random: target width must be positive");

  MetasurfaceGeometry geom;
  geom.height_nm = params.height_nm;
  geom.min_feature_nm = params.min_feature_nm;
  geom.ridge_index = params.ridge_index;
  geom.substrate_index = params.substrate_index;
  geom.wavelength_nm = params.wavelength_nm;
  geom.rng_seed = seed;

  CounterRng rng(seed);
  const double spread = params.mean_size_nm - params.min_feature_nm;
  const double target_nm = params.target_width_um * 1000.0;
  double total = 0.0;
  while (total < target_nm) {
    double r = spread + spread * rng.normal();
    while (r < 0.0) r = spread + spread * rng.normal();
    const double d = params.min_feature_nm + r;
    geom.widths_nm.push_back(d);
    total += d;
  }
  // Clip the final element so the sum hits the target exactly; if the clipped
  // remainder would violate d_min, merge it into the predecessor instead.
  const double excess = total - target_nm;
  double& last = geom.widths_nm.back();
  if (last - excess >= std::max(params.min_feature_nm, 1e-9) || geom.widths_nm.size() == 1) {
    last -= excess;
    if (last <= 0.0) last = target_nm;  // single-element degenerate case
  } else {
    const double remainder = last - excess;
    geom.widths_nm.pop_back();
    geom.widths_nm.back() += remainder;
  }
  return geom;
}

std::vector<Violation> validate(const MetasurfaceGeometry& geom, double target_width_um) {
  std::vector<Violation> out;
  if (geom.widths_nm.empty()) {
    out.push_back({"geometry has no elements", -1});
    return out;
  }
  for (std::size_t i = 0; i < geom.widths_nm.size(); ++i) {
    const double d = geom.widths_nm[i];
    if (!(d > 0.0)) {
      out.push_back({"width " + std::to_string(i) + " is not positive (" + std::to_string(d) + " nm)",
                     static_cast<std::ptrdiff_t>(i)});
    } else if (geom.min_feature_nm > 0.0 && d < geom.min_feature_nm - 1e-9) {
      out.push_back({"width " + std::to_string(i) + " (" + std::to_string(d) +
                         " nm) is below the minimum feature " + std::to_string(geom.min_feature_nm) + " nm",
                     static_cast<std::ptrdiff_t>(i)});
    }
  }
  if (geom.height_nm < 0.0) out.push_back({"negative height", -1});
  if (target_width_um > 0.0) {
    const double total = geom.total_width_um();
    const double max_d_um =
        *std::max_element(geom.widths_nm.begin(), geom.widths_nm.end()) / 1000.0;
    if (std::abs(total - target_width_um) > max_d_um) {
      out.push_back({"total width " + std::to_string(total) + " um deviates from target " +
                         std::to_string(target_width_um) + " um by more than the largest element",
                     -1});
    }
  }
  return out;
}

namespace {
constexpr int kGeometryFormatVersion = 1;
}

std::string serialize(const MetasurfaceGeometry& geom) {
  nlohmann::ordered_json j;
  j["format_version"] = kGeometryFormatVersion;
  j["wavelength_nm"] = geom.wavelength_nm;
  j["height_nm"] = geom.height_nm;
  j["d_min_nm"] = geom.min_feature_nm;
  j["ridge_index"] = geom.ridge_index;
  j["substrate_index"] = geom.substrate_index;
  j["rng_seed"] = geom.rng_seed;
  j["first_element"] = geom.first_element == ElementKind::gap ? "gap" : "ridge";
  j["widths_nm"] = geom.widths_nm;
  return j.dump(1) + "\n";
}

MetasurfaceGeometry deserialize(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("geometry file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("geometry file: top level is not an object");

  static const char* kKeys[] = {"format_version", "wavelength_nm", "height_nm",
                                "d_min_nm",       "ridge_index",   "substrate_index",
                                "rng_seed",       "first_element", "widths_nm"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKeys)) {
      throw ParseError("geometry file: unknown key \"" + key + "\"");
    }
  }
  for (const char* key : kKeys) {
    if (!j.contains(key)) throw ParseError(std::string("geometry file: missing field \"") + key + "\"");
  }
  if (j["format_version"].get<int>() != kGeometryFormatVersion) {
    throw ParseError("geometry file: unsupported format_version");
  }

  MetasurfaceGeometry geom;
  try {
    geom.wavelength_nm = j["wavelength_nm"].get<double>();
    geom.height_nm = j["height_nm"].get<double>();
    geom.min_feature_nm = j["d_min_nm"].get<double>();
    geom.ridge_index = j["ridge_index"].get<double>();
    geom.substrate_index = j["substrate_index"].get<double>();
    geom.rng_seed = j["rng_seed"].get<std::uint64_t>();
    const std::string fe = j["first_element"].get<std::string>();
    if (fe == "gap") geom.first_element = ElementKind::gap;
    else if (fe == "ridge") geom.first_element = ElementKind::ridge;
    else throw ParseError("geometry file: first_element must be \"gap\" or \"ridge\"");
    geom.widths_nm = j["widths_nm"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("geometry file: ") + e.what());
  }

  const std::vector<Violation> violations = validate(geom);
  if (!violations.empty()) {
    throw ValidationError("geometry file: " + violations.front().message);
  }
  return geom;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t geometry_hash(const MetasurfaceGeometry& geom) {
  return fnv1a(serialize(geom));
}

}  // namespace metatomo
