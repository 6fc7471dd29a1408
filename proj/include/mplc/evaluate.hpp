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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mplc/gates.hpp"
#include "mplc/wfm.hpp"

namespace mplc {

/// |<analysis|out>|^2. The analysis field must be normalized.
double project(const Field& out, const Field& analysis);

/// Probability table of probe outcomes.
///
/// Row i is input state i; column j is analysis state j, projected onto the
/// gate image of that state. Columns are grouped into blocks by basis.
struct CrosstalkMatrix {
  Eigen::MatrixXd raw;
  /// raw with each row divided, block by block, by the block's total.
  Eigen::MatrixXd normalized;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<int> row_basis;
  std::vector<int> col_basis;
  /// Power each input leaves inside the modelled output subspace.
  std::vector<double> capture_efficiency;

  int rows() const { return static_cast<int>(raw.rows()); }
  int cols() const { return static_cast<int>(raw.cols()); }
};

/// Builds a CrosstalkMatrix from raw probabilities and labels.
CrosstalkMatrix make_crosstalk(Eigen::MatrixXd raw, std::span<const LabeledState> inputs,
                               std::span<const LabeledState> analyses);

/// Simulates the design on each input state and projects onto the gate
/// images of the analysis states.
CrosstalkMatrix crosstalk_matrix(const ConverterDesign& design, std::span<const LabeledState> inputs,
                                 std::span<const LabeledState> analyses);

/// Same table for a device described only by its mode transfer matrix
/// (transfer(j, i) = <output mode j | device(input mode i)>).
CrosstalkMatrix crosstalk_from_transfer(const Matrix& transfer, const GateMatrix& gate,
                                        std::span<const LabeledState> inputs,
                                        std::span<const LabeledState> analyses);

/// sum_i C_ii / sum_ij C_ij over the whole matrix.
double visibility(const Eigen::MatrixXd& c);

/// Global visibility of the raw table restricted to blocks where the input
/// and analysis basis coincide (cross-basis blocks carry no diagonal).
double visibility(const CrosstalkMatrix& c);

/// Mean of the row-normalized diagonal over matched-basis blocks.
double accuracy(const CrosstalkMatrix& c);

/// Integer pixel offsets (dx, dy) per mask; +dx moves the pattern to larger x.
struct MisalignmentSpec {
  std::vector<std::pair<int, int>> offsets;

  static MisalignmentSpec zeros(int planes) { return {std::vector<std::pair<int, int>>(planes)}; }
  bool operator==(const MisalignmentSpec&) const = default;
};

/// Translates a mask; exposed pixels read zero phase.
PhaseMask shift_mask(const PhaseMask& mask, int dx, int dy);

ConverterDesign misalign(const ConverterDesign& design, const MisalignmentSpec& spec);

struct GaParams {
  int population = 30;
  int generations = 40;
  double mutation_rate = 0.15;
  int tournament_size = 3;
  int elitism = 1;
  double crossover_rate = 0.7;
  /// Search box for every gene: [-bound, bound] pixels.
  int bound = 3;
  std::uint64_t seed = 1;
  /// Masks whose offsets are searched; empty means all. Others stay at 0.
  std::vector<int> masks;

  void validate() const;
};

struct GaResult {
  MisalignmentSpec recovered;
  double best_fitness = 0.0;
  std::vector<double> best_per_generation;
  /// One CSV line per generation: index, best fitness, space-separated genome.
  std::vector<std::string> log;
  int evaluations = 0;
};

/// Fitness of a correction: visibility of misalign(design, injected - correction)
/// probed with `probes` (matched inputs and analyses).
double alignment_fitness(const ConverterDesign& design, const MisalignmentSpec& injected,
                         const MisalignmentSpec& correction, std::span<const LabeledState> probes);

/// Elitist generational GA over per-mask integer offsets. Tournament
/// selection, uniform crossover and +-1/+-2 pixel mutation steps.
GaResult genetic_align(const ConverterDesign& design, const MisalignmentSpec& injected,
                       const GaParams& params, std::span<const LabeledState> probes);

/// Computational-basis probes for the design's dimension.
GaResult genetic_align(const ConverterDesign& design, const MisalignmentSpec& injected,
                       const GaParams& params);

}  // namespace mplc
