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

#include <memory>
#include <span>
#include <vector>

#include "mplc/fields.hpp"

namespace mplc {

/// Phase-only modulation plane. Phases are stored wrapped to [-pi, pi).
class PhaseMask {
 public:
  PhaseMask() = default;
  /// All-zero mask.
  explicit PhaseMask(const GridSpec& grid);
  PhaseMask(const GridSpec& grid, std::vector<double> phase);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> phase() const { return phase_; }
  double at(int row, int col) const { return phase_[static_cast<std::size_t>(row) * grid_.n + col]; }

  bool operator==(const PhaseMask&) const = default;

 private:
  GridSpec grid_;
  std::vector<double> phase_;
};

/// Wraps an angle into [-pi, pi).
double wrap_phase(double phase);

struct PropagationSpec {
  double distance = 0.0;
  /// Spatial frequencies with |fx| or |fy| above this fraction of Nyquist are dropped.
  double band_limit_fraction = 0.9;

  void validate() const;
};

/// Precomputed angular-spectrum transfer function for one grid and distance.
///
/// The on-axis carrier e^{ikz} is factored out, so the result differs from the
/// textbook propagator by a global phase only.
class Propagator {
 public:
  Propagator(const GridSpec& grid, const PropagationSpec& spec);

  /// Forward propagation in place.
  void forward(Field& f) const;
  /// Adjoint propagation (conjugated transfer function) in place.
  void backward(Field& f) const;

  const GridSpec& grid() const { return grid_; }
  const PropagationSpec& spec() const { return spec_; }

 private:
  void apply(Field& f, bool conjugate) const;

  GridSpec grid_;
  PropagationSpec spec_;
  bool identity_ = false;
  std::vector<cplx> transfer_;
};

Field propagate(const Field& f, const PropagationSpec& spec);
Field backpropagate(const Field& f, const PropagationSpec& spec);

/// f * e^{i phase}.
Field apply_mask(const Field& f, const PhaseMask& m);
/// f * e^{-i phase}; the adjoint of apply_mask.
Field apply_mask_conjugate(const Field& f, const PhaseMask& m);

void apply_mask_inplace(Field& f, const PhaseMask& m, bool conjugate = false);

}  // namespace mplc
