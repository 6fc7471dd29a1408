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
#include <numbers>

#include "mplc/error.hpp"
#include "mplc/fields.hpp"
#include "mplc/gates.hpp"

using namespace mplc;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec grid(int n, double window) { return {n, window / n, 808e-9}; }

}  // namespace

TEST(Grid, HalfPixelCoordinates) {
  const GridSpec g = grid(64, 6.4e-3);
  EXPECT_DOUBLE_EQ(g.coord(32), 0.5 * g.pitch);
  EXPECT_DOUBLE_EQ(g.coord(31), -0.5 * g.pitch);
  EXPECT_DOUBLE_EQ(g.coord(0), -31.5 * g.pitch);
}

TEST(Grid, RejectsBadSpecs) {
  EXPECT_THROW((GridSpec{63, 1e-4, 808e-9}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{32, 1e-4, 808e-9}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{64, 0.0, 808e-9}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{64, 1e-4, -1.0}.validate()), InvalidInput);
}

TEST(Laguerre, MatchesClosedForms) {
  for (double alpha : {0.0, 1.0, 2.5}) {
    for (double x : {0.0, 0.3, 1.7, 4.0}) {
      EXPECT_DOUBLE_EQ(assoc_laguerre(0, alpha, x), 1.0);
      EXPECT_NEAR(assoc_laguerre(1, alpha, x), 1.0 + alpha - x, 1e-13);
      const double l2 = (x * x - 2.0 * (alpha + 2.0) * x + (alpha + 1.0) * (alpha + 2.0)) / 2.0;
      EXPECT_NEAR(assoc_laguerre(2, alpha, x), l2, 1e-12);
    }
  }
}

TEST(LgMode, AmplitudeMatchesHandWrittenP1L1) {
  const double w = 1e-3;
  const ModeSpec spec{1, 1, w};
  for (auto [x, y] : {std::pair{0.3e-3, 0.2e-3}, {-0.9e-3, 0.4e-3}, {1.5e-3, -1.1e-3}}) {
    const double r2 = x * x + y * y;
    const double c = std::sqrt(2.0 / (kPi * 2.0)) / w;
    const double radial = std::sqrt(2.0 * r2) / w * (2.0 - 2.0 * r2 / (w * w)) * std::exp(-r2 / (w * w));
    const cplx expected = c * radial * std::polar(1.0, std::atan2(y, x));
    const cplx got = lg_amplitude(spec, x, y);
    EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-12 * std::abs(expected) + 1e-300);
  }
}

TEST(LgMode, GaussianMatchesAnalyticProfile) {
  const double w = 1e-3;
  const GridSpec g = grid(256, 12 * w);
  const Field lg = lg_mode({0, 0, w}, g);
  std::vector<cplx> gauss(g.size());
  for (int r = 0; r < g.n; ++r) {
    for (int c = 0; c < g.n; ++c) {
      const double x = g.coord(c), y = g.coord(r);
      gauss[static_cast<std::size_t>(r) * g.n + c] = std::exp(-(x * x + y * y) / (w * w));
    }
  }
  const Field ref = normalize(Field(g, gauss));
  EXPECT_NEAR(std::norm(inner_product(ref, lg)), 1.0, 1e-9);
}

TEST(LgMode, VortexHasOnAxisNull) {
  const double w = 1e-3;
  EXPECT_EQ(lg_amplitude({0, 1, w}, 0.0, 0.0), cplx(0.0, 0.0));
  const GridSpec g = grid(256, 12 * w);
  const Field f = lg_mode({0, 1, w}, g);
  double peak = 0.0;
  for (const cplx& z : f.data()) peak = std::max(peak, std::abs(z));
  // nearest samples sit at r = pitch / sqrt(2); |LG_01| ~ r exp(-r^2/w^2), peak at r = w / sqrt(2)
  const double r = g.pitch / std::sqrt(2.0);
  const double expected = std::sqrt(2.0) * r / w * std::exp(-r * r / (w * w)) / std::exp(-0.5);
  const int c = g.n / 2;
  for (int row : {c - 1, c}) {
    for (int col : {c - 1, c}) EXPECT_NEAR(std::abs(f.at(row, col)) / peak, expected, 1e-2 * expected);
  }
}

TEST(LgMode, OppositeVorticesOrthogonal) {
  const double w = 1e-3;
  const GridSpec g = grid(512, 12 * w);
  EXPECT_LT(std::norm(inner_product(lg_mode({0, 1, w}, g), lg_mode({0, -1, w}, g))), 1e-6);
  EXPECT_LT(std::abs(inner_product(lg_mode({0, 0, w}, g), lg_mode({1, 0, w}, g))), 1e-6);
}

TEST(LgMode, GramMatrixIsIdentity) {
  const GridSpec g = grid(512, 10e-3);
  const double w = g.window() / 10.0;
  std::vector<Field> modes;
  for (int p = 0; p <= 2; ++p) {
    for (int l = -2; l <= 2; ++l) modes.push_back(lg_mode({p, l, w}, g));
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const cplx expected = i == j ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(inner_product(modes[i], modes[j]) - expected), 0.0, 1e-4) << i << "," << j;
    }
  }
}

TEST(LgMode, RejectsWaistTooLarge) {
  const GridSpec g = grid(128, 6e-3);
  EXPECT_NO_THROW(lg_mode({0, 0, 1e-3}, g));
  EXPECT_THROW(lg_mode({0, 0, 1.01e-3}, g), InvalidInput);
  EXPECT_THROW(lg_mode({0, 0, -1e-3}, g), InvalidInput);
}

TEST(InnerProduct, NormalizedSelfOverlapIsOne) {
  const GridSpec g = grid(128, 12e-3);
  const Field f = lg_mode({1, 2, 1e-3}, g);
  const cplx s = inner_product(f, f);
  EXPECT_NEAR(s.real(), 1.0, 1e-9);
  EXPECT_NEAR(s.imag(), 0.0, 1e-9);
}

TEST(InnerProduct, ConjugateSymmetricAndLinear) {
  const GridSpec g = grid(128, 12e-3);
  const Field a = lg_mode({0, 1, 1e-3}, g);
  const Field b = superpose(std::vector{lg_mode({0, 1, 1e-3}, g), lg_mode({1, 0, 1.2e-3}, g)},
                            std::vector<cplx>{{0.6, 0.1}, {0.2, -0.7}});
  EXPECT_NEAR(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))), 0.0, 1e-15);
  const cplx alpha{2.0, 1.0};
  EXPECT_NEAR(std::abs(inner_product(a, alpha * b) - alpha * inner_product(a, b)), 0.0, 1e-14);
}

TEST(InnerProduct, RejectsGridMismatch) {
  const Field a = lg_mode({0, 0, 1e-3}, grid(128, 12e-3));
  const Field b = lg_mode({0, 0, 1e-3}, grid(128, 13e-3));
  EXPECT_THROW(inner_product(a, b), InvalidInput);
}

TEST(Normalize, Examples) {
  const GridSpec g = grid(128, 12e-3);
  const Field f = lg_mode({0, 1, 1e-3}, g);
  const Field same = normalize(f);
  const Field scaled = normalize(cplx(3.0) * f);
  double peak = 0.0, err_same = 0.0, err_scaled = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    peak = std::max(peak, std::abs(f.data()[i]));
    err_same = std::max(err_same, std::abs(same.data()[i] - f.data()[i]));
    err_scaled = std::max(err_scaled, std::abs(scaled.data()[i] - f.data()[i]));
  }
  EXPECT_LE(err_same, 1e-12 * peak);
  EXPECT_LE(err_scaled, 1e-12 * peak);
  EXPECT_NEAR(normalize(lg_mode({2, -1, 1e-3}, g)).power(), 1.0, 1e-9);
  EXPECT_THROW(normalize(Field(g)), InvalidInput);
}

TEST(Superpose, Examples) {
  const GridSpec g = grid(128, 12e-3);
  const std::vector modes{lg_mode({0, -1, 1e-3}, g), lg_mode({0, 0, 1e-3}, g), lg_mode({0, 1, 1e-3}, g)};
  const Field first = superpose(modes, std::vector<cplx>{1.0, 0.0, 0.0});
  EXPECT_NEAR(std::norm(inner_product(first, modes[0])), 1.0, 1e-12);

  const double s = 1.0 / std::sqrt(3.0);
  const Field equal = superpose(modes, std::vector<cplx>{s, s, s});
  EXPECT_NEAR(equal.power(), 1.0, 1e-9);
  for (const auto& m : modes) EXPECT_NEAR(std::norm(inner_product(m, equal)), 1.0 / 3.0, 1e-6);

  // column 1 of the angle-basis transform
  const cplx w3 = std::polar(1.0, 2.0 * kPi / 3.0);
  const std::vector<cplx> col{s, s * w3, s * w3 * w3};
  const Field ang = superpose(modes, col);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::abs(inner_product(modes[k], ang) - col[k]), 0.0, 1e-5);
  }
  EXPECT_NEAR(std::abs(h_gate(3, 1)(2, 1) - col[2]), 0.0, 1e-12);
}

TEST(Superpose, RejectsCancellationAndShapeErrors) {
  const GridSpec g = grid(128, 12e-3);
  const Field m = lg_mode({0, 0, 1e-3}, g);
  EXPECT_THROW(superpose(std::vector{m, m}, std::vector<cplx>{1.0, -1.0}), InvalidInput);
  EXPECT_THROW(superpose(std::vector{m}, std::vector<cplx>{1.0, 1.0}), InvalidInput);
}
