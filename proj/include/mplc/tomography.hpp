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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mplc/gates.hpp"
#include "mplc/wfm.hpp"

namespace mplc {

/// d^2 Hermitian operators: identity, then symmetric, antisymmetric and
/// diagonal generalized Gell-Mann matrices (each family lexicographic in
/// (j, k)). All are scaled so that Tr[s_i s_j] = d delta_ij; for d = 2 this is
/// {I, X, Y, Z}.
std::vector<Matrix> gell_mann_basis(int d);

inline constexpr const char* kBasisConvention =
    "gell-mann: I, sym(j<k), antisym(j<k), diag(l=1..d-1); Tr[s_i s_j] = d delta_ij";

/// E(rho) = sum_ij chi_ij s_i rho s_j^dagger.
struct ProcessMatrix {
  int d = 0;
  Matrix chi;
};

/// (I (x) E)|Psi><Psi| with |Psi> = sum_k |kk> / sqrt(d); index k * d + m.
struct ChoiMatrix {
  int d = 0;
  Matrix rho;
};

/// transfer(j, i) = <output mode j | device(input mode i)>.
struct ChannelTransfer {
  Matrix transfer;
  /// Mean power captured in the output subspace, ||T||_F^2 / d.
  double capture = 0.0;
};

ChannelTransfer channel_transfer(const ConverterDesign& design);

/// Probabilities p(a -> b) for every input state a and analysis state b,
/// renormalized within each analysis basis.
struct ProbeRecords {
  int d = 0;
  std::vector<LabeledState> inputs;
  std::vector<LabeledState> analyses;
  Eigen::MatrixXd probabilities;  // rows: inputs, cols: analyses
  std::vector<double> capture;    // raw captured power per input
};

/// Sends every MUB state through the simulated design and projects onto every
/// MUB state of the output modes.
ProbeRecords probe_channel(const ConverterDesign& design);

/// Exact records of a linear map acting on density matrices.
ProbeRecords probe_records(const std::function<Matrix(const Matrix&)>& channel, int d);
ProbeRecords probe_records_from_kraus(std::span<const Matrix> kraus);

/// Least-squares chi over Hermitian matrices, followed by eigenvalue clipping
/// and trace renormalization when chi has eigenvalues below -1e-8.
ProcessMatrix reconstruct_chi(const ProbeRecords& records);

/// Rank-one chi of the single Kraus operator T.
ProcessMatrix chi_from_transfer(const Matrix& transfer);
ProcessMatrix chi_from_kraus(std::span<const Matrix> kraus);

Matrix apply_chi(const ProcessMatrix& chi, const Matrix& rho);

ChoiMatrix choi_from_chi(const ProcessMatrix& chi);

/// Tr[rho^2].
double process_purity(const ChoiMatrix& choi);

/// Uhlmann fidelity of the two Choi states.
double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_th);

/// Completely depolarizing channel: rho -> Tr[rho] I / d.
Matrix depolarize(const Matrix& rho);

}  // namespace mplc
