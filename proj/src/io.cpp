// Copyright 2026 The mplc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mplc/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "mplc/error.hpp"

namespace mplc {

using json = nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class T>
void put(std::ostream& os, T value) {
  auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(bytes.data(), bytes.size());
}

template <class T>
T get(std::istream& is, const fs::path& path) {
  std::array<char, sizeof(T)> bytes{};
  if (!is.read(bytes.data(), bytes.size())) throw IoError("truncated record: " + path.string());
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw IoError("cannot read " + path.string());
  return is;
}

void write_header(std::ostream& os, const char* magic, const GridSpec& grid) {
  os.write(magic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n));
  put<double>(os, grid.pitch);
}

GridSpec read_header(std::istream& is, const char* magic, const fs::path& path, double wavelength) {
  char tag[4];
  if (!is.read(tag, 4) || std::memcmp(tag, magic, 4) != 0) {
    throw IoError(path.string() + ": expected " + std::string(magic, 4) + " record");
  }
  GridSpec grid;
  grid.n = static_cast<int>(get<std::uint32_t>(is, path));
  grid.pitch = get<double>(is, path);
  grid.wavelength = wavelength;
  try {
    grid.validate();
  } catch (const InvalidInput& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return grid;
}

void check_end(std::istream& is, const fs::path& path) {
  if (is.peek() != std::char_traits<char>::eof()) throw IoError("trailing bytes in " + path.string());
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json matrix_part(const Matrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void save_field(const fs::path& path, const Field& f) {
  auto os = open_out(path, std::ios::binary);
  write_header(os, "FLD1", f.grid());
  for (const cplx& z : f.data()) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
  if (!os) throw IoError("write failed: " + path.string());
}

Field load_field(const fs::path& path, double wavelength) {
  auto is = open_in(path, std::ios::binary);
  const GridSpec grid = read_header(is, "FLD1", path, wavelength);
  std::vector<cplx> amp(grid.size());
  for (auto& z : amp) {
    const double re = get<double>(is, path);
    z = {re, get<double>(is, path)};
  }
  check_end(is, path);
  return Field(grid, std::move(amp));
}

void save_mask(const fs::path& path, const PhaseMask& m) {
  auto os = open_out(path, std::ios::binary);
  write_header(os, "MSK1", m.grid());
  for (double v : m.phase()) put<double>(os, v);
  if (!os) throw IoError("write failed: " + path.string());
}

PhaseMask load_mask(const fs::path& path, double wavelength) {
  auto is = open_in(path, std::ios::binary);
  const GridSpec grid = read_header(is, "MSK1", path, wavelength);
  std::vector<double> phase(grid.size());
  for (auto& v : phase) v = get<double>(is, path);
  check_end(is, path);
  return PhaseMask(grid, std::move(phase));
}

std::uint16_t phase_to_gray(double phase) {
  const double w = wrap_phase(phase);
  const auto v = static_cast<long>(std::lround((w + std::numbers::pi) / kTwoPi * 65536.0));
  return static_cast<std::uint16_t>(v % 65536);
}

double gray_to_phase(std::uint16_t v) { return v * kTwoPi / 65536.0 - std::numbers::pi; }

void save_mask_png(const fs::path& path, const PhaseMask& m) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const int n = m.grid().n;
  std::vector<png_uint_16> pixels(m.grid().size());
  const auto phase = m.phase();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = phase_to_gray(phase[i]);

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(n);
  image.height = static_cast<png_uint_32>(n);
  image.format = PNG_FORMAT_LINEAR_Y;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    throw IoError("png write failed: " + path.string() + ": " + image.message);
  }
}

PhaseMask load_mask_png(const fs::path& path, double pitch, double wavelength) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError("png read failed: " + path.string() + ": " + image.message);
  }
  if (image.width != image.height) {
    png_image_free(&image);
    throw IoError(path.string() + ": mask image must be square");
  }
  image.format = PNG_FORMAT_LINEAR_Y;
  std::vector<png_uint_16> pixels(PNG_IMAGE_SIZE(image) / sizeof(png_uint_16));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    throw IoError("png read failed: " + path.string() + ": " + image.message);
  }
  GridSpec grid{static_cast<int>(image.width), pitch, wavelength};
  grid.validate();
  std::vector<double> phase(pixels.size());
  for (std::size_t i = 0; i < phase.size(); ++i) phase[i] = gray_to_phase(pixels[i]);
  return PhaseMask(grid, std::move(phase));
}

namespace {

template <class Value>
void save_grid_csv(const fs::path& path, int n, Value value) {
  auto os = open_out(path);
  os << "row";
  for (int c = 0; c < n; ++c) os << ',' << c;
  os << '\n';
  for (int r = 0; r < n; ++r) {
    os << r;
    for (int c = 0; c < n; ++c) os << ',' << fmt(value(r, c));
    os << '\n';
  }
}

}  // namespace

void save_intensity_csv(const fs::path& path, const Field& f) {
  save_grid_csv(path, f.n(), [&](int r, int c) { return std::norm(f.at(r, c)); });
}

void save_mask_csv(const fs::path& path, const PhaseMask& m) {
  save_grid_csv(path, m.grid().n, [&](int r, int c) { return m.at(r, c); });
}

void save_crosstalk_csv(const fs::path& path, const CrosstalkMatrix& c, bool normalized) {
  const Eigen::MatrixXd& table = normalized ? c.normalized : c.raw;
  auto os = open_out(path);
  os << "input";
  for (const auto& label : c.col_labels) os << ',' << label;
  os << '\n';
  for (int i = 0; i < c.rows(); ++i) {
    os << c.row_labels[i];
    for (int j = 0; j < c.cols(); ++j) os << ',' << fmt(table(i, j));
    os << '\n';
  }
}

std::string crosstalk_report_json(const CrosstalkMatrix& c) {
  json j;
  j["visibility"] = visibility(c);
  j["accuracy"] = accuracy(c);
  j["capture_efficiency"] = c.capture_efficiency;
  j["labels"] = {{"inputs", c.row_labels}, {"analyses", c.col_labels}};
  json rows = json::array();
  for (int r = 0; r < c.rows(); ++r) {
    rows.push_back(std::vector<double>(c.normalized.row(r).begin(), c.normalized.row(r).end()));
  }
  j["normalized"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string matrix_json(int d, const Matrix& m) {
  json j;
  j["d"] = d;
  j["basis_convention"] = kBasisConvention;
  j["re"] = matrix_part(m, false);
  j["im"] = matrix_part(m, true);
  return j.dump(2) + "\n";
}

Matrix matrix_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const auto rows = static_cast<Eigen::Index>(re.size());
    if (rows == 0 || im.size() != re.size()) throw IoError("matrix json: re/im shape mismatch");
    const auto cols = static_cast<Eigen::Index>(re[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(re[r].size()) != cols || im[r].size() != re[r].size()) {
        throw IoError("matrix json: ragged rows");
      }
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
    }
    return m;
  } catch (const json::exception& e) {
    throw IoError(std::string("matrix json: ") + e.what());
  }
}

void save_matrix_csv(const fs::path& path, const Matrix& m) {
  auto os = open_out(path);
  os << "i,j,re,im,abs\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << i << ',' << j << ',' << fmt(m(i, j).real()) << ',' << fmt(m(i, j).imag()) << ','
         << fmt(std::abs(m(i, j))) << '\n';
    }
  }
}

void write_text(const fs::path& path, const std::string& text) {
  auto os = open_out(path, std::ios::binary);
  os << text;
  if (!os) throw IoError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  auto is = open_in(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace mplc
