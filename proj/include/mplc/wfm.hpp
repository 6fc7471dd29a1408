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

#include <span>
#include <vector>

#include "mplc/fields.hpp"
#include "mplc/gates.hpp"
#include "mplc/propagation.hpp"

namespace mplc {

/// Phase subtracted from each input/output overlap before the per-pixel sum.
enum class PhaseReference {
  /// One phase for all pairs: arg of the summed integrated overlaps. Locks the
  /// relative phases of the gate outputs.
  kCommon,
  /// Each pair's own integrated-overlap phase. Output phases are left free,
  /// which is enough for permutations but not for superposition targets.
  kPerPair,
};

/// Geometry and stopping rules for a wavefront-matching run.
///
/// The optical path is: input plane, lead_in, mask 1, plane_spacing, mask 2,
/// ..., mask n, lead_out, output plane.
struct WfmConfig {
  GridSpec grid;
  int n_planes = 3;
  double plane_spacing = 0.8;
  double lead_in = 0.4;
  double lead_out = 0.4;
  int max_iterations = 50;
  /// Early stop once the trace gains less than this for `stall_iterations` in a row.
  double convergence_epsilon = 1e-5;
  int stall_iterations = 3;
  double band_limit_fraction = 0.9;
  PhaseReference phase_reference = PhaseReference::kCommon;

  void validate() const;

  /// Config with lead_in = lead_out = plane_spacing / 2.
  static WfmConfig make(const GridSpec& grid, int n_planes, double plane_spacing);
};

/// Mean squared overlap (1/d) sum_r |<target_r|out_r>|^2 after each iteration.
struct ConvergenceTrace {
  std::vector<double> values;

  double final_value() const { return values.empty() ? 0.0 : values.back(); }
};

/// Optimized mask stack together with everything needed to re-simulate it.
struct ConverterDesign {
  std::vector<PhaseMask> masks;
  WfmConfig config;
  ModeBasis basis;
  GateMatrix gate;

  void validate() const;
};

struct WfmResult {
  std::vector<PhaseMask> masks;
  ConvergenceTrace trace;
};

/// Runs wavefront matching from zero masks. Inputs and targets must be
/// normalized, equal in number, and share the config grid.
WfmResult wfm_optimize(std::span<const Field> inputs, std::span<const Field> targets,
                       const WfmConfig& config);

struct DesignResult {
  ConverterDesign design;
  ConvergenceTrace trace;
};

/// target_fields + wfm_optimize.
DesignResult design_converter(const GateMatrix& gate, const ModeBasis& basis,
                              const WfmConfig& config);

/// Forward model of a design, with transfer functions built once.
class ConverterSimulator {
 public:
  explicit ConverterSimulator(const ConverterDesign& design);

  Field run(const Field& input) const;
  std::vector<Field> run_all(std::span<const Field> inputs) const;

  const ConverterDesign& design() const { return design_; }

 private:
  ConverterDesign design_;
  Propagator lead_in_;
  Propagator spacing_;
  Propagator lead_out_;
};

Field simulate_converter(const ConverterDesign& design, const Field& input);

/// Design with all-zero masks, useful as a free-space reference.
ConverterDesign empty_design(const WfmConfig& config, const ModeBasis& basis, const GateMatrix& gate);

}  // namespace mplc
