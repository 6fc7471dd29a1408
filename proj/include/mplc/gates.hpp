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

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "mplc/fields.hpp"

namespace mplc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unitary acting on column vectors: column j is the image of basis state j.
class GateMatrix {
 public:
  GateMatrix() = default;
  /// Rejects non-square or non-unitary input (tolerance 1e-9).
  explicit GateMatrix(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  cplx operator()(int row, int col) const { return entries_(row, col); }

  /// Max-abs deviation of U U^dagger from identity.
  double unitarity_error() const;

 private:
  Matrix entries_;
};

/// X^m |i> = |(i + m) mod d>.
GateMatrix x_gate(int d, int m);

/// H_0 = I; for m >= 1, entry (k, l) = omega_d^{l k + (m - 1) k^2} / sqrt(d).
/// d = 2 returns the qubit bases {I, Hadamard, S-Hadamard}, with m in [0, 2].
GateMatrix h_gate(int d, int m);

/// Control-major controlled shift: |p>|t> -> |p>|(t + p) mod d_tgt>.
GateMatrix cx_gate(int d_ctrl, int d_tgt);

/// Matrix product g1 * g2 (g2 acts first).
GateMatrix compose(const GateMatrix& g1, const GateMatrix& g2);

bool is_prime(int d);

/// A state from one of the mutually unbiased bases. basis_id 0 is the
/// computational basis ("I"), basis_id m is the column set of H_m.
struct LabeledState {
  int basis_id = 0;
  int index = 0;
  Vector coeffs;

  std::string label() const;
};

/// Roman numeral for basis_id + 1.
std::string basis_name(int basis_id);

/// All d(d+1) MUB states for prime d (or d = 2), basis-major.
std::vector<LabeledState> mub_states(int d);

/// Computational basis only.
std::vector<LabeledState> computational_states(int d);

/// Ordered map from qudit index to LG mode labels.
struct ModeBasis {
  std::vector<std::pair<int, int>> modes;  // (p, l)
  double input_waist = 0.0;
  double output_waist_scale = 1.0;

  int dim() const { return static_cast<int>(modes.size()); }
  void validate() const;

  /// OAM modes p = 0 with l = -floor((d-1)/2), ..., ascending.
  static ModeBasis oam(int d, double waist, double output_waist_scale = 1.0);
  /// Product basis |p>|l> in control-major order.
  static ModeBasis product(const std::vector<int>& ps, const std::vector<int>& ls, double waist,
                           double output_waist_scale = 1.0);
};

std::vector<Field> basis_fields(const ModeBasis& basis, const GridSpec& grid, bool output_side);

/// Field of a qudit state: superposition over the basis modes.
Field state_field(const std::vector<Field>& basis_modes, const Vector& coeffs);

struct TargetFields {
  std::vector<Field> inputs;
  std::vector<Field> targets;
};

/// Input j is LG mode j at the input waist; target j superposes the
/// output-waist modes with the coefficients of gate column j.
TargetFields target_fields(const GateMatrix& gate, const ModeBasis& basis, const GridSpec& grid);

}  // namespace mplc
