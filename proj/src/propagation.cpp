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

#include "mplc/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mplc/error.hpp"

namespace mplc {
namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

const FftPlans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, FftPlans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  FftPlans plans;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans.forward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_FORWARD, flags);
  plans.inverse = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_BACKWARD, flags);
  fftw_free(scratch);
  return cache.emplace(n, plans).first->second;
}

double frequency(int index, int n, double pitch) {
  const int k = index < n / 2 ? index : index - n;
  return k / (n * pitch);
}

}  // namespace

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phase + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  w -= std::numbers::pi;
  // fmod rounding can land exactly on +pi.
  if (w >= std::numbers::pi) w -= two_pi;
  return w;
}

PhaseMask::PhaseMask(const GridSpec& grid) : grid_(grid), phase_(grid.size(), 0.0) {
  grid_.validate();
}

PhaseMask::PhaseMask(const GridSpec& grid, std::vector<double> phase)
    : grid_(grid), phase_(std::move(phase)) {
  grid_.validate();
  if (phase_.size() != grid_.size()) throw InvalidInput("mask size does not match grid");
  for (auto& v : phase_) {
    if (!std::isfinite(v)) throw InvalidInput("mask phases must be finite");
    v = wrap_phase(v);
  }
}

void PropagationSpec::validate() const {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw InvalidInput("propagation distance must be >= 0");
  }
  if (!(band_limit_fraction > 0.0 && band_limit_fraction <= 1.0)) {
    throw InvalidInput("band_limit_fraction must lie in (0, 1]");
  }
}

Propagator::Propagator(const GridSpec& grid, const PropagationSpec& spec)
    : grid_(grid), spec_(spec) {
  grid_.validate();
  spec_.validate();
  const int n = grid_.n;
  const double k = 2.0 * std::numbers::pi / grid_.wavelength;
  const double nyquist = 0.5 / grid_.pitch;
  const double f_cut = spec_.band_limit_fraction * nyquist;

  transfer_.assign(grid_.size(), cplx{});
  bool all_unit = spec_.distance == 0.0;
  for (int row = 0; row < n; ++row) {
    const double fy = frequency(row, n, grid_.pitch);
    for (int col = 0; col < n; ++col) {
      const double fx = frequency(col, n, grid_.pitch);
      auto& h = transfer_[static_cast<std::size_t>(row) * n + col];
      if (std::abs(fx) > f_cut * (1 + 1e-12) || std::abs(fy) > f_cut * (1 + 1e-12)) {
        all_unit = false;
        continue;
      }
      const double kt2 = 4.0 * std::numbers::pi * std::numbers::pi * (fx * fx + fy * fy);
      if (kt2 > k * k) {
        all_unit = false;
        continue;
      }
      const double kz = std::sqrt(k * k - kt2);
      // kz - k, written to avoid cancellation
      const double dkz = -kt2 / (k + kz);
      h = std::polar(1.0, spec_.distance * dkz);
    }
  }
  identity_ = all_unit;
}

void Propagator::forward(Field& f) const { apply(f, false); }

void Propagator::backward(Field& f) const { apply(f, true); }

void Propagator::apply(Field& f, bool conjugate) const {
  require_same_grid(f.grid(), grid_, "propagate");
  if (identity_) return;
  const auto& plans = plans_for(grid_.n);
  auto data = f.data();
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans.forward, raw, raw);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const cplx h = conjugate ? std::conj(transfer_[i]) : transfer_[i];
    data[i] *= h * scale;
  }
  fftw_execute_dft(plans.inverse, raw, raw);
}

Field propagate(const Field& f, const PropagationSpec& spec) {
  Field out = f;
  Propagator(f.grid(), spec).forward(out);
  return out;
}

Field backpropagate(const Field& f, const PropagationSpec& spec) {
  Field out = f;
  Propagator(f.grid(), spec).backward(out);
  return out;
}

void apply_mask_inplace(Field& f, const PhaseMask& m, bool conjugate) {
  require_same_grid(f.grid(), m.grid(), "apply_mask");
  auto data = f.data();
  const auto phase = m.phase();
  const double sign = conjugate ? -1.0 : 1.0;
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= std::polar(1.0, sign * phase[i]);
}

Field apply_mask(const Field& f, const PhaseMask& m) {
  Field out = f;
  apply_mask_inplace(out, m, false);
  return out;
}

Field apply_mask_conjugate(const Field& f, const PhaseMask& m) {
  Field out = f;
  apply_mask_inplace(out, m, true);
  return out;
}

}  // namespace mplc
