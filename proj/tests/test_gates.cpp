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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "mplc/error.hpp"
#include "mplc/gates.hpp"
#include "gate_tables.hpp"

using namespace mplc;
using mplc::testing::mat;

namespace {

const cplx w3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
const double s3 = 1.0 / std::sqrt(3.0);

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void expect_unitary(const GateMatrix& g) {
  const auto d = g.dim();
  EXPECT_LE(max_abs(g.entries() * g.entries().adjoint() - Matrix::Identity(d, d)), 1e-12);
}

}  // namespace

TEST(TabulatedMatrices, HadamardFamilyEntrywise) {
  for (int m = 0; m <= 3; ++m) EXPECT_LE(max_abs(h_gate(3, m).entries() - mplc::testing::table_h(m)), 1e-12) << m;
}

TEST(TabulatedMatrices, ShiftFamilyAsInputRowTables) {
  for (int m = 0; m <= 2; ++m) {
    EXPECT_LE(max_abs(x_gate(3, m).entries().transpose() - mplc::testing::table_x_rows(m)), 1e-12) << m;
  }
}

TEST(TabulatedMatrices, Cnot) { EXPECT_LE(max_abs(cx_gate(2, 2).entries() - mplc::testing::table_cnot()), 1e-12); }

TEST(XGate, ShiftsIndexForward) {
  const GateMatrix x = x_gate(5, 1);
  Vector e4 = Vector::Zero(5);
  e4(4) = 1.0;
  const Vector out = x.entries() * e4;
  EXPECT_EQ(out(0), cplx(1.0));
  for (int d = 2; d <= 6; ++d) {
    for (int m = 0; m < d; ++m) {
      expect_unitary(x_gate(d, m));
      const Matrix prod = x_gate(d, m).entries() * x_gate(d, (d - m) % d).entries();
      EXPECT_LE(max_abs(prod - Matrix::Identity(d, d)), 1e-15);
    }
  }
  EXPECT_THROW(x_gate(3, 3), InvalidInput);
  EXPECT_THROW(x_gate(1, 0), InvalidInput);
}

TEST(HGate, StructureAndDomain) {
  for (int d : {2, 3, 5, 7}) {
    for (int m = 0; m <= d; ++m) expect_unitary(h_gate(d, m));
  }
  const GateMatrix h52 = h_gate(5, 2);
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) EXPECT_NEAR(std::abs(h52(r, c)), 1.0 / std::sqrt(5.0), 1e-15);
  }
  EXPECT_THROW(h_gate(4, 1), InvalidInput);
  EXPECT_THROW(h_gate(3, 4), InvalidInput);
}

TEST(CxGate, ControlShiftsTarget) {
  const GateMatrix cx = cx_gate(3, 3);
  expect_unitary(cx);
  // (p=2, t=2) -> (p=2, t=1)
  EXPECT_EQ(cx(2 * 3 + 1, 2 * 3 + 2), cplx(1.0));
  EXPECT_LE(max_abs(cx.entries().topLeftCorner(3, 3) - Matrix::Identity(3, 3)), 0.0);
  const Matrix sq = cx_gate(2, 2).entries() * cx_gate(2, 2).entries();
  EXPECT_LE(max_abs(sq - Matrix::Identity(4, 4)), 0.0);
}

TEST(Compose, Examples) {
  EXPECT_LE(max_abs(compose(x_gate(3, 0), h_gate(3, 1)).entries() - h_gate(3, 1).entries()), 1e-15);
  EXPECT_LE(max_abs(compose(x_gate(3, 1), x_gate(3, 2)).entries() - Matrix::Identity(3, 3)), 1e-15);
  // hand product of the tabulated matrices: X1 (column convention) times H2
  const Matrix x1 = mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  const Matrix h2 = s3 * mat({{1, 1, 1}, {w3, w3 * w3, 1}, {w3, 1, w3 * w3}});
  const GateMatrix xh = compose(x_gate(3, 1), h_gate(3, 2));
  expect_unitary(xh);
  EXPECT_LE(max_abs(xh.entries() - x1 * h2), 1e-12);
  EXPECT_THROW(compose(x_gate(2, 1), x_gate(3, 1)), InvalidInput);
}

TEST(GateMatrix, RejectsNonUnitary) {
  EXPECT_THROW(GateMatrix(mat({{1, 0}, {0, 2}})), InvalidInput);
  EXPECT_THROW(GateMatrix(Matrix::Identity(2, 3)), InvalidInput);
}

TEST(Mubs, CountsAndLabels) {
  const auto s3states = mub_states(3);
  ASSERT_EQ(s3states.size(), 12u);
  EXPECT_EQ(s3states.front().label(), "I:0");
  EXPECT_EQ(s3states[4].label(), "II:1");
  EXPECT_EQ(s3states.back().label(), "IV:2");
  EXPECT_EQ(mub_states(2).size(), 6u);
  EXPECT_EQ(mub_states(5).size(), 30u);
  EXPECT_THROW(mub_states(4), InvalidInput);
}

TEST(Mubs, PairwiseUnbiased) {
  for (int d : {2, 3, 5, 7}) {
    const auto states = mub_states(d);
    for (const auto& a : states) {
      EXPECT_NEAR(a.coeffs.norm(), 1.0, 1e-12);
      for (const auto& b : states) {
        const double o = std::norm(a.coeffs.dot(b.coeffs));
        if (a.basis_id != b.basis_id) {
          EXPECT_NEAR(o, 1.0 / d, 1e-12) << d << " " << a.label() << " " << b.label();
        } else {
          EXPECT_NEAR(o, a.index == b.index ? 1.0 : 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(Mubs, QubitBasesArePauliEigenbases) {
  const Matrix x = mat({{0, 1}, {1, 0}});
  const Matrix y = mat({{0, cplx(0, -1)}, {cplx(0, 1), 0}});
  const Matrix z = mat({{1, 0}, {0, -1}});
  const Matrix paulis[] = {z, x, y};
  for (const auto& s : mub_states(2)) {
    const Vector v = paulis[s.basis_id] * s.coeffs;
    // eigenvector: |<v|P v>| = 1
    EXPECT_NEAR(std::abs(s.coeffs.dot(v)), 1.0, 1e-12) << s.label();
  }
}

TEST(ModeBasis, OamAndProductOrdering) {
  const auto b3 = ModeBasis::oam(3, 1e-3);
  ASSERT_EQ(b3.dim(), 3);
  EXPECT_EQ(b3.modes[0], std::make_pair(0, -1));
  EXPECT_EQ(b3.modes[2], std::make_pair(0, 1));
  EXPECT_EQ(ModeBasis::oam(4, 1e-3).modes.back(), std::make_pair(0, 2));
  const auto cx = ModeBasis::product({0, 1}, {-1, 1}, 1e-3);
  const std::vector<std::pair<int, int>> expected{{0, -1}, {0, 1}, {1, -1}, {1, 1}};
  EXPECT_EQ(cx.modes, expected);
  ModeBasis dup{{{0, 1}, {0, 1}}, 1e-3, 1.0};
  EXPECT_THROW(dup.validate(), InvalidInput);
}

TEST(TargetFields, Examples) {
  const GridSpec g{128, 12e-3 / 128, 808e-9};
  const auto basis = ModeBasis::oam(3, 1e-3);
  const auto ident = target_fields(x_gate(3, 0), basis, g);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::norm(inner_product(ident.inputs[j], ident.targets[j])), 1.0, 1e-12);

  const auto shift = target_fields(x_gate(3, 1), basis, g);
  // input l = -1 goes to l = 0
  EXPECT_NEAR(std::norm(inner_product(lg_mode({0, 0, 1e-3}, g), shift.targets[0])), 1.0, 1e-9);

  const auto fourier = target_fields(h_gate(3, 1), basis, g);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::norm(inner_product(fourier.inputs[k], fourier.targets[0])), 1.0 / 3.0, 1e-6);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const cplx gi = inner_product(fourier.inputs[i], fourier.inputs[j]);
      const cplx gt = inner_product(fourier.targets[i], fourier.targets[j]);
      EXPECT_NEAR(std::abs(gi - gt), 0.0, 1e-4);
    }
  }
  EXPECT_THROW(target_fields(x_gate(2, 1), basis, g), InvalidInput);
}
