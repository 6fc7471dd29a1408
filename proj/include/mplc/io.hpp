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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mplc/evaluate.hpp"
#include "mplc/fields.hpp"
#include "mplc/propagation.hpp"
#include "mplc/tomography.hpp"

namespace mplc {

namespace fs = std::filesystem;

/// "FLD1", u32 n, f64 pitch, then n*n (re, im) f64 pairs, row-major, little endian.
void save_field(const fs::path& path, const Field& f);
/// The record carries no wavelength; it is taken from the caller.
Field load_field(const fs::path& path, double wavelength);

/// "MSK1", u32 n, f64 pitch, then n*n f64 phases.
void save_mask(const fs::path& path, const PhaseMask& m);
PhaseMask load_mask(const fs::path& path, double wavelength);

/// 16-bit grayscale, [-pi, pi) -> [0, 65535].
void save_mask_png(const fs::path& path, const PhaseMask& m);
PhaseMask load_mask_png(const fs::path& path, double pitch, double wavelength);

std::uint16_t phase_to_gray(double phase);
double gray_to_phase(std::uint16_t v);

/// |amp|^2 as an n x n CSV with a header of column indices.
void save_intensity_csv(const fs::path& path, const Field& f);
void save_mask_csv(const fs::path& path, const PhaseMask& m);

/// Normalized table with state labels on both axes.
void save_crosstalk_csv(const fs::path& path, const CrosstalkMatrix& c, bool normalized = true);
std::string crosstalk_report_json(const CrosstalkMatrix& c);

/// {"d", "basis_convention", "re", "im"}.
std::string matrix_json(int d, const Matrix& m);
Matrix matrix_from_json(const std::string& text);
/// i, j, re, im, abs.
void save_matrix_csv(const fs::path& path, const Matrix& m);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace mplc
