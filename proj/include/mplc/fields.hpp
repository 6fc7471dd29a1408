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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mplc {

using cplx = std::complex<double>;

/// Square sampling window shared by every field in one computation.
///
/// Pixel (row, col) sits at x = (col - n/2 + 0.5) * pitch and
/// y = (row - n/2 + 0.5) * pitch, so no sample lands exactly on axis.
struct GridSpec {
  int n = 256;
  double pitch = 0.0;       // meters per pixel
  double wavelength = 0.0;  // meters

  /// Throws InvalidInput unless n is even and >= 64 and pitch, wavelength > 0.
  void validate() const;

  double window() const { return n * pitch; }
  double coord(int index) const { return (index - n / 2 + 0.5) * pitch; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }

  bool operator==(const GridSpec&) const = default;
};

/// Grid with `n` pixels whose window spans `window_over_waist` times `waist`.
GridSpec grid_for_waist(double waist, double wavelength, int n = 256,
                        double window_over_waist = 12.0);

/// Laguerre-Gauss mode label. l > 0 winds counterclockwise (e^{+i l phi}).
struct ModeSpec {
  int p = 0;
  int l = 0;
  double waist = 0.0;

  bool operator==(const ModeSpec&) const = default;
};

/// Complex scalar field sampled row-major on a GridSpec.
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid);
  Field(const GridSpec& grid, std::vector<cplx> amplitudes);

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.n; }

  std::span<const cplx> data() const { return amp_; }
  std::span<cplx> data() { return amp_; }

  const cplx& at(int row, int col) const { return amp_[index(row, col)]; }
  cplx& at(int row, int col) { return amp_[index(row, col)]; }

  /// Sum of |amp|^2 * pitch^2.
  double power() const;
  bool all_finite() const;

  Field& operator*=(cplx factor);
  Field& operator+=(const Field& other);

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * grid_.n + col;
  }

  GridSpec grid_;
  std::vector<cplx> amp_;
};

Field operator*(cplx factor, Field f);

/// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence.
double assoc_laguerre(int p, double alpha, double x);

/// Analytic LG_{p,l} amplitude at the waist plane, unit power over the plane.
cplx lg_amplitude(const ModeSpec& spec, double x, double y);

/// Sampled and renormalized LG mode. Rejects waists larger than window/6.
Field lg_mode(const ModeSpec& spec, const GridSpec& grid);

/// <a|b> = sum conj(a) b pitch^2.
cplx inner_product(const Field& a, const Field& b);

Field normalize(const Field& f);

/// Normalized sum_i coeffs[i] * basis[i].
Field superpose(std::span<const Field> basis, std::span<const cplx> coeffs);

/// Throws InvalidInput if the two grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace mplc
