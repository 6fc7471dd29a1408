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

#include <filesystem>
#include <string>
#include <vector>

#include "mplc/config.hpp"
#include "mplc/evaluate.hpp"
#include "mplc/tomography.hpp"
#include "mplc/wfm.hpp"

namespace mplc {

namespace fs = std::filesystem;

/// Design bundle directory:
///   manifest.json         config, gate, basis, trace, seed, mask file names
///   mask_00.msk/.png ...  one pair per plane
///   trace.csv             iteration,trace
///   run.log               timestamps and thread count (not deterministic)
struct DesignBundle {
  ConverterDesign design;
  ConvergenceTrace trace;
  JobConfig job;
};

void save_bundle(const fs::path& dir, const DesignBundle& bundle);
DesignBundle load_bundle(const fs::path& dir);

/// One row of a plane-count sweep.
struct SweepRow {
  int d = 0;
  int n_planes = 0;
  double visibility = 0.0;   // computational-basis probes
  double purity = 0.0;
  double fidelity = 0.0;
  double trace = 0.0;        // final mean overlap of the optimizer
  double capture = 0.0;      // mean power left in the output subspace
};

/// Designs and evaluates one converter per (d, n_planes) cell. The template's
/// basis is replaced by ModeBasis::oam(d, waist) for each d.
std::vector<SweepRow> sweep_planes(const SweepSpec& spec, const WfmConfig& config_template,
                                   const ModeBasis& basis_template);

GateMatrix sweep_gate(const SweepSpec& spec, int d);

std::vector<LabeledState> probe_states(const std::string& probes, int d);

/// Outputs of the subcommands. `out` is a directory unless noted.
DesignBundle cmd_design(const JobConfig& job, const fs::path& out);
/// Writes report.json (or `out` itself when it ends in .json) and crosstalk.csv.
CrosstalkMatrix cmd_evaluate(const fs::path& design_dir, const std::string& probes, const fs::path& out);

struct TomoResult {
  ProcessMatrix chi;
  double purity = 0.0;
  double fidelity = 0.0;
  double capture = 0.0;
};

/// chi.json (or `out`), chi.csv, choi.json, metrics.json. With `ideal`, the
/// analytic gate channel replaces the simulated device.
TomoResult cmd_tomo(const fs::path& design_dir, const fs::path& out, bool ideal = false);
/// fig1b.csv and fig1c.csv.
std::vector<SweepRow> cmd_sweep(const JobConfig& job, const fs::path& out);
/// offsets.json and ga_log.csv. Fitness is the visibility over `probes`.
GaResult cmd_align(const fs::path& design_dir, const MisalignmentSpec& injected, const GaParams& params,
                   const fs::path& out, const std::string& probes = "computational");
/// mask_XX.png and mask_XX.csv for every plane.
void cmd_export_masks(const fs::path& design_dir, const fs::path& out);

}  // namespace mplc
