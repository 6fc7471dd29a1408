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

#include "mplc/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mplc/error.hpp"

namespace mplc {

GateMatrix::GateMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw InvalidInput("gate matrix must be square and non-empty");
  }
  if (unitarity_error() > 1e-9) throw InvalidInput("gate matrix is not unitary");
}

double GateMatrix::unitarity_error() const {
  const Matrix residual = entries_ * entries_.adjoint() - Matrix::Identity(dim(), dim());
  return residual.cwiseAbs().maxCoeff();
}

bool is_prime(int d) {
  if (d < 2) return false;
  for (int q = 2; q * q <= d; ++q) {
    if (d % q == 0) return false;
  }
  return true;
}

GateMatrix x_gate(int d, int m) {
  if (d < 2) throw InvalidInput("x_gate: d must be >= 2");
  if (m < 0 || m >= d) throw InvalidInput("x_gate: m must lie in [0, d)");
  Matrix u = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) u((i + m) % d, i) = 1.0;
  return GateMatrix(std::move(u));
}

GateMatrix h_gate(int d, int m) {
  if (!is_prime(d)) throw InvalidInput("h_gate: d must be prime");
  if (m < 0 || m > d) throw InvalidInput("h_gate: m must lie in [0, d]");
  if (m == 0) return GateMatrix(Matrix::Identity(d, d));
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix u(d, d);
  if (d == 2) {
    // Pauli X and Y eigenbases; the quadratic-phase formula repeats X for d = 2.
    if (m == 1) {
      u << s, s, s, -s;
    } else {
      u << cplx(s, 0), cplx(s, 0), cplx(0, s), cplx(0, -s);
    }
    return GateMatrix(std::move(u));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      // exponent reduced mod d keeps the angle small and exact
      const long e = (static_cast<long>(l) * k + static_cast<long>(m - 1) * k * k) % d;
      u(k, l) = std::polar(s, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
    }
  }
  return GateMatrix(std::move(u));
}

GateMatrix cx_gate(int d_ctrl, int d_tgt) {
  if (d_ctrl < 2 || d_tgt < 2) throw InvalidInput("cx_gate: dimensions must be >= 2");
  const int n = d_ctrl * d_tgt;
  Matrix u = Matrix::Zero(n, n);
  for (int p = 0; p < d_ctrl; ++p) {
    const Matrix block = x_gate(d_tgt, p % d_tgt).entries();
    u.block(p * d_tgt, p * d_tgt, d_tgt, d_tgt) = block;
  }
  return GateMatrix(std::move(u));
}

GateMatrix compose(const GateMatrix& g1, const GateMatrix& g2) {
  if (g1.dim() != g2.dim()) throw InvalidInput("compose: dimension mismatch");
  return GateMatrix(g1.entries() * g2.entries());
}

std::string basis_name(int basis_id) {
  static const char* names[] = {"I",   "II",   "III", "IV", "V",   "VI",
                                "VII", "VIII", "IX",  "X",  "XI",  "XII"};
  if (basis_id >= 0 && basis_id < 12) return names[basis_id];
  return "B" + std::to_string(basis_id + 1);
}

std::string LabeledState::label() const { return basis_name(basis_id) + ":" + std::to_string(index); }

std::vector<LabeledState> computational_states(int d) {
  if (d < 1) throw InvalidInput("state dimension must be >= 1");
  std::vector<LabeledState> out;
  for (int i = 0; i < d; ++i) out.push_back({0, i, Vector::Unit(d, i)});
  return out;
}

std::vector<LabeledState> mub_states(int d) {
  if (!is_prime(d)) throw InvalidInput("mub_states: d must be prime");
  auto out = computational_states(d);
  for (int m = 1; m <= d; ++m) {
    const Matrix h = h_gate(d, m).entries();
    for (int i = 0; i < d; ++i) out.push_back({m, i, h.col(i)});
  }
  return out;
}

void ModeBasis::validate() const {
  if (modes.empty()) throw InvalidInput("mode basis is empty");
  if (!(input_waist > 0.0)) throw InvalidInput("mode basis input_waist must be > 0");
  if (!(output_waist_scale > 0.0)) throw InvalidInput("output_waist_scale must be > 0");
  std::set<std::pair<int, int>> seen;
  for (const auto& [p, l] : modes) {
    if (p < 0) throw InvalidInput("mode basis: p must be >= 0");
    if (!seen.insert({p, l}).second) throw InvalidInput("mode basis: duplicate (p, l) pair");
  }
}

ModeBasis ModeBasis::oam(int d, double waist, double output_waist_scale) {
  ModeBasis basis;
  const int lo = -((d - 1) / 2);
  for (int i = 0; i < d; ++i) basis.modes.emplace_back(0, lo + i);
  basis.input_waist = waist;
  basis.output_waist_scale = output_waist_scale;
  basis.validate();
  return basis;
}

ModeBasis ModeBasis::product(const std::vector<int>& ps, const std::vector<int>& ls, double waist,
                             double output_waist_scale) {
  ModeBasis basis;
  for (int p : ps) {
    for (int l : ls) basis.modes.emplace_back(p, l);
  }
  basis.input_waist = waist;
  basis.output_waist_scale = output_waist_scale;
  basis.validate();
  return basis;
}

std::vector<Field> basis_fields(const ModeBasis& basis, const GridSpec& grid, bool output_side) {
  basis.validate();
  const double w = output_side ? basis.input_waist * basis.output_waist_scale : basis.input_waist;
  std::vector<Field> out;
  out.reserve(basis.modes.size());
  for (const auto& [p, l] : basis.modes) out.push_back(lg_mode({p, l, w}, grid));
  return out;
}

Field state_field(const std::vector<Field>& basis_modes, const Vector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != basis_modes.size()) {
    throw InvalidInput("state dimension does not match the mode basis");
  }
  std::vector<cplx> c(coeffs.data(), coeffs.data() + coeffs.size());
  return superpose(basis_modes, c);
}

TargetFields target_fields(const GateMatrix& gate, const ModeBasis& basis, const GridSpec& grid) {
  if (gate.dim() != basis.dim()) throw InvalidInput("target_fields: gate and basis dimension differ");
  TargetFields out;
  out.inputs = basis_fields(basis, grid, false);
  const auto outputs = basis_fields(basis, grid, true);
  for (int j = 0; j < gate.dim(); ++j) {
    out.targets.push_back(state_field(outputs, gate.entries().col(j)));
  }
  return out;
}

}  // namespace mplc
