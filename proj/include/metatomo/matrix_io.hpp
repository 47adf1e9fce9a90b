// Shared on-disk matrix format: a single-line JSON header
//   {format_version, kind, rows, cols, dtype, metadata}
// followed by a newline and the base64-encoded little-endian row-major
// payload. dtype "complex128" stores interleaved (re, im) doubles.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "metatomo/matrix.hpp"

namespace metatomo {

struct MatrixFileHeader {
  int format_version = 1;
  std::string kind;  // "transmission" | "instrument" | "correlation" | "density"
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string dtype;  // "complex128" | "float64"
  nlohmann::json metadata = nlohmann::json::object();
};

struct MatrixFile {
  MatrixFileHeader header;
  std::vector<double> real_data;  // filled when dtype == float64
  std::vector<cd> complex_data;   // filled when dtype == complex128

  RMatrix as_real_matrix() const;
  CMatrix as_complex_matrix() const;
};

void write_matrix_file(const std::filesystem::path& path, const MatrixFileHeader& header,
                       std::span<const double> payload);
void write_matrix_file(const std::filesystem::path& path, const MatrixFileHeader& header,
                       std::span<const cd> payload);
MatrixFile read_matrix_file(const std::filesystem::path& path);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace metatomo
