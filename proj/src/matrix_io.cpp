#include "metatomo/matrix_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "metatomo/errors.hpp"

namespace metatomo {

static_assert(std::endian::native == std::endian::little,
              "payloads are little-endian; byte swapping is not implemented");

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

nlohmann::ordered_json header_json(const MatrixFileHeader& h) {
  nlohmann::ordered_json j;
  j["format_version"] = h.format_version;
  j["kind"] = h.kind;
  j["rows"] = h.rows;
  j["cols"] = h.cols;
  j["dtype"] = h.dtype;
  j["metadata"] = h.metadata;
  return j;
}

void write_raw(const std::filesystem::path& path, const MatrixFileHeader& header,
               const std::uint8_t* bytes, std::size_t count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << header_json(header).dump() << "\n";
  out << base64_encode({bytes, count}) << "\n";
  if (!out) throw ValidationError("write failed: " + path.string());
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = bytes[i] << 16;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  static const auto value_of = [] {
    std::array<std::int8_t, 256> t{};
    t.fill(-1);
    for (int i = 0; i < 64; ++i) t[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
    return t;
  }();
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '\n' || c == '\r') continue;
    if (c == '=') break;
    const std::int8_t v = value_of[static_cast<unsigned char>(c)];
    if (v < 0) throw ParseError("matrix file: invalid base64 character");
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFileHeader& header,
                       std::span<const double> payload) {
  MatrixFileHeader h = header;
  h.dtype = "float64";
  if (payload.size() != h.rows * h.cols) throw ValidationError("matrix file: payload size mismatch");
  write_raw(path, h, reinterpret_cast<const std::uint8_t*>(payload.data()),
            payload.size() * sizeof(double));
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFileHeader& header,
                       std::span<const cd> payload) {
  MatrixFileHeader h = header;
  h.dtype = "complex128";
  if (payload.size() != h.rows * h.cols) throw ValidationError("matrix file: payload size mismatch");
  write_raw(path, h, reinterpret_cast<const std::uint8_t*>(payload.data()),
            payload.size() * sizeof(cd));
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
  std::string header_line;
  if (!std::getline(in, header_line)) throw ParseError("matrix file: missing header line");

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matrix file header: ") + e.what());
  }
  MatrixFile f;
  try {
    f.header.format_version = j.at("format_version").get<int>();
    f.header.kind = j.at("kind").get<std::string>();
    f.header.rows = j.at("rows").get<std::size_t>();
    f.header.cols = j.at("cols").get<std::size_t>();
    f.header.dtype = j.at("dtype").get<std::string>();
    f.header.metadata = j.value("metadata", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file header: ") + e.what());
  }
  if (f.header.format_version != 1) throw ParseError("matrix file: unsupported format_version");

  std::stringstream rest;
  rest << in.rdbuf();
  const std::vector<std::uint8_t> bytes = base64_decode(rest.str());

  const std::size_t count = f.header.rows * f.header.cols;
  if (f.header.dtype == "float64") {
    if (bytes.size() != count * sizeof(double)) {
      throw ParseError("matrix file: payload has " + std::to_string(bytes.size()) +
                       " bytes, expected " + std::to_string(count * sizeof(double)));
    }
    f.real_data.resize(count);
    std::memcpy(f.real_data.data(), bytes.data(), bytes.size());
    for (double v : f.real_data) {
      if (!std::isfinite(v)) throw ValidationError("matrix file: non-finite entry");
    }
  } else if (f.header.dtype == "complex128") {
    if (bytes.size() != count * sizeof(cd)) {
      throw ParseError("matrix file: payload has " + std::to_string(bytes.size()) +
                       " bytes, expected " + std::to_string(count * sizeof(cd)));
    }
    f.complex_data.resize(count);
    std::memcpy(f.complex_data.data(), bytes.data(), bytes.size());
    for (const cd& v : f.complex_data) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ValidationError("matrix file: non-finite entry");
      }
    }
  } else {
    throw ParseError("matrix file: unknown dtype \"" + f.header.dtype + "\"");
  }
  return f;
}

RMatrix MatrixFile::as_real_matrix() const {
  if (header.dtype != "float64") throw ValidationError("matrix file: expected float64 payload");
  RMatrix m(header.rows, header.cols);
  std::memcpy(m.data(), real_data.data(), real_data.size() * sizeof(double));
  return m;
}

CMatrix MatrixFile::as_complex_matrix() const {
  if (header.dtype != "complex128") throw ValidationError("matrix file: expected complex128 payload");
  CMatrix m(header.rows, header.cols);
  std::memcpy(m.data(), complex_data.data(), complex_data.size() * sizeof(cd));
  return m;
}

}  // namespace metatomo
