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

#include "mplc/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mplc/error.hpp"

namespace mplc {

void GridSpec::validate() const {
  if (n < 64 || n % 2 != 0) {
    throw InvalidInput("grid n must be even and >= 64, got " + std::to_string(n));
  }
  if (!(pitch > 0.0) || !std::isfinite(pitch)) throw InvalidInput("grid pitch must be > 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw InvalidInput("grid wavelength must be > 0");
  }
}

GridSpec grid_for_waist(double waist, double wavelength, int n, double window_over_waist) {
  if (!(waist > 0.0)) throw InvalidInput("waist must be > 0");
  GridSpec grid{n, window_over_waist * waist / n, wavelength};
  grid.validate();
  return grid;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string(what) + ": grid mismatch");
}

Field::Field(const GridSpec& grid) : grid_(grid), amp_(grid.size()) { grid_.validate(); }

Field::Field(const GridSpec& grid, std::vector<cplx> amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
  grid_.validate();
  if (amp_.size() != grid_.size()) {
    throw InvalidInput("field amplitude count does not match grid");
  }
  if (!all_finite()) throw InvalidInput("field amplitudes must be finite");
}

double Field::power() const {
  double sum = 0.0;
  for (const auto& a : amp_) sum += std::norm(a);
  return sum * grid_.pitch * grid_.pitch;
}

bool Field::all_finite() const {
  return std::all_of(amp_.begin(), amp_.end(), [](const cplx& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  });
}

Field& Field::operator*=(cplx factor) {
  for (auto& a : amp_) a *= factor;
  return *this;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(grid_, other.grid_, "field addition");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += other.amp_[i];
  return *this;
}

Field operator*(cplx factor, Field f) {
  f *= factor;
  return f;
}

double assoc_laguerre(int p, double alpha, double x) {
  if (p < 0) throw InvalidInput("Laguerre degree must be >= 0");
  double prev = 1.0;
  if (p == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx lg_amplitude(const ModeSpec& spec, double x, double y) {
  const int al = std::abs(spec.l);
  const double w = spec.waist;
  const double r2 = x * x + y * y;
  const double rho = std::sqrt(2.0 * r2) / w;
  // sqrt(2 p! / (pi (p+|l|)!)) / w
  const double log_norm = 0.5 * (std::log(2.0) + std::lgamma(spec.p + 1.0) -
                                 std::log(std::numbers::pi) - std::lgamma(spec.p + al + 1.0));
  const double radial = std::exp(log_norm) / w * std::pow(rho, al) *
                        assoc_laguerre(spec.p, al, 2.0 * r2 / (w * w)) * std::exp(-r2 / (w * w));
  if (spec.l == 0) return {radial, 0.0};
  if (r2 == 0.0) return {0.0, 0.0};
  return std::polar(radial, spec.l * std::atan2(y, x));
}

Field lg_mode(const ModeSpec& spec, const GridSpec& grid) {
  grid.validate();
  if (spec.p < 0) throw InvalidInput("LG radial index p must be >= 0");
  if (!(spec.waist > 0.0)) throw InvalidInput("LG waist must be > 0");
  if (spec.waist > grid.window() / 6.0) {
    throw InvalidInput("LG waist exceeds window/6; mode does not fit the grid");
  }
  Field f(grid);
  for (int row = 0; row < grid.n; ++row) {
    const double y = grid.coord(row);
    for (int col = 0; col < grid.n; ++col) f.at(row, col) = lg_amplitude(spec, grid.coord(col), y);
  }
  return normalize(f);
}

cplx inner_product(const Field& a, const Field& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  const auto da = a.data();
  const auto db = b.data();
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < da.size(); ++i) sum += std::conj(da[i]) * db[i];
  return sum * (a.grid().pitch * a.grid().pitch);
}

Field normalize(const Field& f) {
  const double p = f.power();
  if (!(p > 0.0)) throw InvalidInput("cannot normalize a zero field");
  Field out = f;
  out *= 1.0 / std::sqrt(p);
  return out;
}

Field superpose(std::span<const Field> basis, std::span<const cplx> coeffs) {
  if (basis.empty()) throw InvalidInput("superpose: empty basis");
  if (basis.size() != coeffs.size()) throw InvalidInput("superpose: coefficient count mismatch");
  Field out(basis.front().grid());
  auto acc = out.data();
  double scale = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    require_same_grid(basis[k].grid(), out.grid(), "superpose");
    if (coeffs[k] == cplx{}) continue;
    scale += std::norm(coeffs[k]) * basis[k].power();
    const auto src = basis[k].data();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeffs[k] * src[i];
  }
  const double p = out.power();
  if (!(p > 1e-20 * scale)) throw InvalidInput("superpose: resultant field is zero");
  out *= 1.0 / std::sqrt(p);
  return out;
}

}  // namespace mplc
