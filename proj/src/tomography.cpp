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

#include "mplc/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mplc/error.hpp"
#include "mplc/evaluate.hpp"
#include "mplc/parallel.hpp"

namespace mplc {

std::vector<Matrix> gell_mann_basis(int d) {
  if (d < 1) throw InvalidInput("gell_mann_basis: d must be >= 1");
  const double scale = std::sqrt(d / 2.0);
  std::vector<Matrix> out;
  out.push_back(Matrix::Identity(d, d));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(j, k) = s(k, j) = scale;
      out.push_back(std::move(s));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(j, k) = cplx(0.0, -scale);
      s(k, j) = cplx(0.0, scale);
      out.push_back(std::move(s));
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix s = Matrix::Zero(d, d);
    const double f = scale * std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) s(j, j) = f;
    s(l, l) = -l * f;
    out.push_back(std::move(s));
  }
  return out;
}

ChannelTransfer channel_transfer(const ConverterDesign& design) {
  const ConverterSimulator sim(design);
  const auto in_modes = basis_fields(design.basis, design.config.grid, false);
  const auto out_modes = basis_fields(design.basis, design.config.grid, true);
  const auto outputs = sim.run_all(in_modes);
  const int d = design.basis.dim();
  ChannelTransfer ct;
  ct.transfer = Matrix(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) ct.transfer(j, i) = inner_product(out_modes[j], outputs[i]);
  }
  ct.capture = ct.transfer.squaredNorm() / d;
  return ct;
}

namespace {

void renormalize_per_basis(ProbeRecords& rec) {
  const auto n_in = rec.probabilities.rows();
  rec.capture.assign(n_in, 0.0);
  for (Eigen::Index a = 0; a < n_in; ++a) {
    std::size_t start = 0;
    while (start < rec.analyses.size()) {
      std::size_t end = start;
      double total = 0.0;
      while (end < rec.analyses.size() && rec.analyses[end].basis_id == rec.analyses[start].basis_id) {
        total += rec.probabilities(a, end);
        ++end;
      }
      if (start == 0) rec.capture[a] = total;
      if (total > 0.0) {
        for (std::size_t b = start; b < end; ++b) rec.probabilities(a, b) /= total;
      }
      start = end;
    }
  }
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace

ProbeRecords probe_channel(const ConverterDesign& design) {
  const int d = design.basis.dim();
  ProbeRecords rec;
  rec.d = d;
  rec.inputs = mub_states(d);
  rec.analyses = rec.inputs;

  const ConverterSimulator sim(design);
  const auto in_modes = basis_fields(design.basis, design.config.grid, false);
  const auto out_modes = basis_fields(design.basis, design.config.grid, true);
  std::vector<Field> analysis_fields;
  for (const auto& b : rec.analyses) analysis_fields.push_back(state_field(out_modes, b.coeffs));

  rec.probabilities.resize(rec.inputs.size(), rec.analyses.size());
  parallel_for(rec.inputs.size(), [&](std::size_t a) {
    const Field out = sim.run(state_field(in_modes, rec.inputs[a].coeffs));
    for (std::size_t b = 0; b < analysis_fields.size(); ++b) {
      rec.probabilities(a, b) = project(out, analysis_fields[b]);
    }
  });
  renormalize_per_basis(rec);
  return rec;
}

ProbeRecords probe_records(const std::function<Matrix(const Matrix&)>& channel, int d) {
  ProbeRecords rec;
  rec.d = d;
  rec.inputs = mub_states(d);
  rec.analyses = rec.inputs;
  rec.probabilities.resize(rec.inputs.size(), rec.analyses.size());
  for (std::size_t a = 0; a < rec.inputs.size(); ++a) {
    const Matrix out = channel(projector(rec.inputs[a].coeffs));
    for (std::size_t b = 0; b < rec.analyses.size(); ++b) {
      const Vector& v = rec.analyses[b].coeffs;
      rec.probabilities(a, b) = std::real(v.dot(out * v));
    }
  }
  renormalize_per_basis(rec);
  return rec;
}

ProbeRecords probe_records_from_kraus(std::span<const Matrix> kraus) {
  if (kraus.empty()) throw InvalidInput("probe_records_from_kraus: no Kraus operators");
  const int d = static_cast<int>(kraus.front().rows());
  std::vector<Matrix> ops(kraus.begin(), kraus.end());
  return probe_records(
      [ops](const Matrix& rho) {
        Matrix out = Matrix::Zero(rho.rows(), rho.cols());
        for (const auto& k : ops) out += k * rho * k.adjoint();
        return out;
      },
      d);
}

ProcessMatrix reconstruct_chi(const ProbeRecords& records) {
  const int d = records.d;
  const auto basis = gell_mann_basis(d);
  const int m = d * d;
  const int unknowns = m * m;
  const auto rows = records.probabilities.rows() * records.probabilities.cols();
  if (rows < unknowns) {
    throw InvalidInput("reconstruct_chi: " + std::to_string(rows) + " records for " +
                       std::to_string(unknowns) + " unknowns");
  }

  // x = [chi_ii (real), then (Re chi_ij, Im chi_ij) for i < j]
  auto offdiag_index = [&](int i, int j) {
    // position of pair (i, j), i < j, in row-major upper-triangle order
    return m + 2 * (i * m - i * (i + 1) / 2 + (j - i - 1));
  };
  Eigen::MatrixXd a(rows, unknowns);
  Eigen::VectorXd p(rows);
  Eigen::Index row = 0;
  std::vector<cplx> u(m);
  for (std::size_t ia = 0; ia < records.inputs.size(); ++ia) {
    const Vector& in = records.inputs[ia].coeffs;
    for (std::size_t ib = 0; ib < records.analyses.size(); ++ib, ++row) {
      const Vector& out = records.analyses[ib].coeffs;
      for (int i = 0; i < m; ++i) u[i] = out.dot(basis[i] * in);
      for (int i = 0; i < m; ++i) {
        a(row, i) = std::norm(u[i]);
        for (int j = i + 1; j < m; ++j) {
          const cplx w = u[i] * std::conj(u[j]);
          a(row, offdiag_index(i, j)) = 2.0 * w.real();
          a(row, offdiag_index(i, j) + 1) = -2.0 * w.imag();
        }
      }
      p(row) = records.probabilities(ia, ib);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv(0) * 1e-10;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > cutoff ? 1 : 0;
  if (rank < unknowns) {
    std::ostringstream msg;
    msg << "reconstruct_chi: probe set is not informationally complete (rank " << rank << " of "
        << unknowns << ", smallest singular value " << sv(sv.size() - 1) << ")";
    throw InvalidInput(msg.str());
  }
  const Eigen::VectorXd x = svd.solve(p);

  ProcessMatrix out{d, Matrix::Zero(m, m)};
  for (int i = 0; i < m; ++i) {
    out.chi(i, i) = x(i);
    for (int j = i + 1; j < m; ++j) {
      const cplx v(x(offdiag_index(i, j)), x(offdiag_index(i, j) + 1));
      out.chi(i, j) = v;
      out.chi(j, i) = std::conj(v);
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(out.chi);
  if (eig.eigenvalues().minCoeff() < -1e-8) {
    Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    clipped /= clipped.sum();
    out.chi = eig.eigenvectors() * clipped.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
  }
  return out;
}

ProcessMatrix chi_from_kraus(std::span<const Matrix> kraus) {
  if (kraus.empty()) throw InvalidInput("chi_from_kraus: no Kraus operators");
  const int d = static_cast<int>(kraus.front().rows());
  const auto basis = gell_mann_basis(d);
  const int m = d * d;
  ProcessMatrix out{d, Matrix::Zero(m, m)};
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw InvalidInput("chi_from_kraus: Kraus shape mismatch");
    Vector coeff(m);
    for (int i = 0; i < m; ++i) coeff(i) = (basis[i].adjoint() * k).trace() / static_cast<double>(d);
    out.chi += coeff * coeff.adjoint();
  }
  return out;
}

ProcessMatrix chi_from_transfer(const Matrix& transfer) {
  const Matrix ops[] = {transfer};
  return chi_from_kraus(ops);
}

Matrix apply_chi(const ProcessMatrix& chi, const Matrix& rho) {
  const auto basis = gell_mann_basis(chi.d);
  const int m = chi.d * chi.d;
  Matrix out = Matrix::Zero(chi.d, chi.d);
  for (int i = 0; i < m; ++i) {
    const Matrix left = basis[i] * rho;
    for (int j = 0; j < m; ++j) {
      if (chi.chi(i, j) == cplx{}) continue;
      out += chi.chi(i, j) * left * basis[j].adjoint();
    }
  }
  return out;
}

ChoiMatrix choi_from_chi(const ProcessMatrix& chi) {
  const int d = chi.d;
  ChoiMatrix out{d, Matrix::Zero(d * d, d * d)};
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      Matrix e = Matrix::Zero(d, d);
      e(k, l) = 1.0;
      out.rho.block(k * d, l * d, d, d) = apply_chi(chi, e) / static_cast<double>(d);
    }
  }
  return out;
}

double process_purity(const ChoiMatrix& choi) { return std::real((choi.rho * choi.rho).trace()); }

namespace {

/// Eigenvalues below this fraction of the largest are rounding noise.
constexpr double kRankCutoff = 1e-12;

Eigen::VectorXd clipped_eigenvalues(const Eigen::VectorXd& values) {
  const double floor = kRankCutoff * std::max(values.maxCoeff(), 0.0);
  return values.unaryExpr([floor](double v) { return v > floor ? v : 0.0; });
}

Matrix psd_sqrt(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  const Eigen::VectorXd root = clipped_eigenvalues(eig.eigenvalues()).cwiseSqrt();
  return eig.eigenvectors() * root.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

double process_fidelity(const ProcessMatrix& chi_exp, const ProcessMatrix& chi_th) {
  if (chi_exp.d != chi_th.d || chi_exp.chi.rows() != chi_th.chi.rows()) {
    throw InvalidInput("process_fidelity: process matrices differ in dimension");
  }
  const Matrix a = choi_from_chi(chi_th).rho;
  const Matrix b = choi_from_chi(chi_exp).rho;
  const Matrix root_a = psd_sqrt(a);
  Matrix inner = root_a * b * root_a;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(inner);
  const double tr = clipped_eigenvalues(eig.eigenvalues()).cwiseSqrt().sum();
  return std::min(tr * tr, 1.0);
}

Matrix depolarize(const Matrix& rho) {
  const auto d = rho.rows();
  return rho.trace() / static_cast<double>(d) * Matrix::Identity(d, d);
}

}  // namespace mplc
