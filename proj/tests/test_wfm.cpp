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

#include "mplc/error.hpp"
#include "mplc/evaluate.hpp"
#include "mplc/parallel.hpp"
#include "reference.hpp"

using namespace mplc;
using namespace mplc::testing;

TEST(Wfm, MatchedFieldsNeedNoMask) {
  const auto config = small_config(2);
  const auto basis = ModeBasis::oam(3, kWaist);
  const auto inputs = basis_fields(basis, config.grid, false);
  const auto empty = empty_design(config, basis, x_gate(3, 0));
  const ConverterSimulator sim(empty);
  const auto targets = sim.run_all(inputs);
  std::vector<Field> normalized;
  for (const auto& t : targets) normalized.push_back(normalize(t));

  const auto result = wfm_optimize(inputs, normalized, config);
  ASSERT_FALSE(result.trace.values.empty());
  EXPECT_GE(result.trace.values.front(), 0.999);

  // phases are ~0 wherever the light is
  Field at_mask = inputs[1];
  Propagator(config.grid, {config.lead_in, config.band_limit_fraction}).forward(at_mask);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < at_mask.data().size(); ++i) {
    const double w = std::norm(at_mask.data()[i]);
    num += w * std::abs(result.masks[0].phase()[i]);
    den += w;
  }
  EXPECT_LT(num / den, 1e-6);
}

TEST(Wfm, ReferenceTraceRisesAndStaysInRange) {
  const auto& trace = reference_x1().trace.values;
  ASSERT_GE(trace.size(), 10u);
  EXPECT_LE(trace.size(), 50u);
  for (std::size_t i = 1; i < 10; ++i) EXPECT_GE(trace[i], trace[i - 1] - 1e-3) << i;
  for (double v : trace) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_GT(trace.back(), 0.8);
}

TEST(Wfm, ReferenceDesignIsLowCrosstalk) {
  const auto comp = computational_states(3);
  const auto c = crosstalk_matrix(reference_x1().design, comp, comp);
  EXPECT_GE(visibility(c), 0.96);
}

TEST(Wfm, GlobalPhaseOffsetOnAMaskChangesNothing) {
  const auto& design = reference_x1().design;
  const auto states = mub_states(3);
  const auto base = crosstalk_matrix(design, states, states);
  for (std::size_t t = 0; t < design.masks.size(); ++t) {
    ConverterDesign shifted = design;
    std::vector<double> phase(design.masks[t].phase().begin(), design.masks[t].phase().end());
    for (double& v : phase) v += 1.234;
    shifted.masks[t] = PhaseMask(design.config.grid, std::move(phase));
    const auto c = crosstalk_matrix(shifted, states, states);
    EXPECT_LE((c.raw - base.raw).cwiseAbs().maxCoeff(), 1e-10) << t;
  }
}

TEST(Wfm, DeterministicAcrossRunsAndThreadCounts) {
  const auto config = small_config(3);
  const auto basis = ModeBasis::oam(3, kWaist);
  const int saved = num_threads();
  set_num_threads(1);
  const auto a = design_converter(h_gate(3, 1), basis, config);
  const auto b = design_converter(h_gate(3, 1), basis, config);
  set_num_threads(3);
  const auto c = design_converter(h_gate(3, 1), basis, config);
  set_num_threads(saved);
  EXPECT_EQ(a.design.masks, b.design.masks);
  EXPECT_EQ(a.design.masks, c.design.masks);
  EXPECT_EQ(a.trace.values, c.trace.values);
}

TEST(Wfm, SingleModeConversion) {
  const auto config = small_config(2);
  const std::vector inputs{lg_mode({0, 0, kWaist}, config.grid)};
  const std::vector targets{lg_mode({0, 1, kWaist}, config.grid)};
  const auto result = wfm_optimize(inputs, targets, config);
  EXPECT_GT(result.trace.final_value(), result.trace.values.front() - 1e-12);
  EXPECT_GT(result.trace.final_value(), 0.5);
}

TEST(Wfm, RejectsBadInputs) {
  const auto config = small_config(2);
  const auto basis = ModeBasis::oam(3, kWaist);
  const auto f = basis_fields(basis, config.grid, false);
  EXPECT_THROW(wfm_optimize(f, std::vector<Field>(f.begin(), f.begin() + 2), config), InvalidInput);
  EXPECT_THROW(wfm_optimize(std::vector<Field>{}, std::vector<Field>{}, config), InvalidInput);
  std::vector<Field> unnormalized = f;
  unnormalized[0] *= 2.0;
  EXPECT_THROW(wfm_optimize(unnormalized, f, config), InvalidInput);
  const GridSpec other{64, config.grid.pitch * 1.1, kLambda};
  const auto g = basis_fields(basis, other, false);
  EXPECT_THROW(wfm_optimize(g, g, config), InvalidInput);

  WfmConfig bad = config;
  bad.n_planes = 0;
  EXPECT_THROW(bad.validate(), InvalidInput);
  bad = config;
  bad.plane_spacing = 0.0;
  EXPECT_THROW(bad.validate(), InvalidInput);
  bad = config;
  bad.max_iterations = 0;
  EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Simulate, EmptyZeroLengthSystemIsIdentity) {
  auto config = small_config(1);
  config.lead_in = config.lead_out = 0.0;
  config.band_limit_fraction = 1.0;
  const auto basis = ModeBasis::oam(3, kWaist);
  const auto design = empty_design(config, basis, x_gate(3, 0));
  const Field in = lg_mode({0, 1, kWaist}, config.grid);
  const Field out = simulate_converter(design, in);
  for (std::size_t i = 0; i < in.data().size(); ++i) EXPECT_EQ(out.data()[i], in.data()[i]);
}

TEST(Simulate, NeverGainsPower) {
  const auto& design = reference_x1().design;
  for (const auto& f : basis_fields(design.basis, design.config.grid, false)) {
    EXPECT_LE(simulate_converter(design, f).power(), f.power() + 1e-12);
  }
  EXPECT_THROW(simulate_converter(design, lg_mode({0, 0, kWaist}, small_config(1).grid)), InvalidInput);
}
