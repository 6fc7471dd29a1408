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

#include "mplc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "mplc/error.hpp"
#include "mplc/parallel.hpp"

namespace mplc {

double project(const Field& out, const Field& analysis) {
  return std::norm(inner_product(analysis, out));
}

CrosstalkMatrix make_crosstalk(Eigen::MatrixXd raw, std::span<const LabeledState> inputs,
                               std::span<const LabeledState> analyses) {
  if (raw.rows() != static_cast<Eigen::Index>(inputs.size()) ||
      raw.cols() != static_cast<Eigen::Index>(analyses.size())) {
    throw InvalidInput("crosstalk: table shape does not match the probe lists");
  }
  CrosstalkMatrix c;
  c.raw = std::move(raw);
  c.normalized = c.raw;
  for (const auto& s : inputs) {
    c.row_labels.push_back(s.label());
    c.row_basis.push_back(s.basis_id);
  }
  for (const auto& s : analyses) {
    c.col_labels.push_back(s.label());
    c.col_basis.push_back(s.basis_id);
  }

  std::map<int, std::vector<Eigen::Index>> blocks;
  for (Eigen::Index j = 0; j < c.raw.cols(); ++j) blocks[c.col_basis[j]].push_back(j);

  c.capture_efficiency.assign(c.raw.rows(), 0.0);
  for (Eigen::Index i = 0; i < c.raw.rows(); ++i) {
    double captured = 0.0;
    for (const auto& [basis, cols] : blocks) {
      double total = 0.0;
      for (auto j : cols) total += c.raw(i, j);
      if (total > 0.0) {
        for (auto j : cols) c.normalized(i, j) = c.raw(i, j) / total;
      }
      // every complete analysis basis spans the same subspace
      if (basis == c.row_basis[i] || captured == 0.0) captured = total;
    }
    c.capture_efficiency[i] = captured;
  }
  return c;
}

CrosstalkMatrix crosstalk_matrix(const ConverterDesign& design, std::span<const LabeledState> inputs,
                                 std::span<const LabeledState> analyses) {
  const ConverterSimulator sim(design);
  const auto& grid = design.config.grid;
  const auto in_modes = basis_fields(design.basis, grid, false);
  const auto out_modes = basis_fields(design.basis, grid, true);
  const Matrix& u = design.gate.entries();

  std::vector<Field> analysis_fields;
  for (const auto& a : analyses) analysis_fields.push_back(state_field(out_modes, u * a.coeffs));

  Eigen::MatrixXd raw(inputs.size(), analyses.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    const Field out = sim.run(state_field(in_modes, inputs[i].coeffs));
    for (std::size_t j = 0; j < analyses.size(); ++j) raw(i, j) = project(out, analysis_fields[j]);
  });
  return make_crosstalk(std::move(raw), inputs, analyses);
}

CrosstalkMatrix crosstalk_from_transfer(const Matrix& transfer, const GateMatrix& gate,
                                        std::span<const LabeledState> inputs,
                                        std::span<const LabeledState> analyses) {
  if (transfer.rows() != gate.dim() || transfer.cols() != gate.dim()) {
    throw InvalidInput("crosstalk: transfer matrix does not match gate dimension");
  }
  Eigen::MatrixXd raw(inputs.size(), analyses.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Vector out = transfer * inputs[i].coeffs;
    for (std::size_t j = 0; j < analyses.size(); ++j) {
      const Vector expected = gate.entries() * analyses[j].coeffs;
      raw(i, j) = std::norm(expected.dot(out));
    }
  }
  return make_crosstalk(std::move(raw), inputs, analyses);
}

double visibility(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) throw InvalidInput("visibility: matrix must be square");
  const double total = c.sum();
  if (!(total > 0.0)) throw InvalidInput("visibility: all-zero crosstalk matrix");
  return c.diagonal().sum() / total;
}

double visibility(const CrosstalkMatrix& c) {
  if (c.rows() != c.cols()) throw InvalidInput("visibility: crosstalk matrix must be square");
  double diag = 0.0;
  double total = 0.0;
  for (int i = 0; i < c.rows(); ++i) {
    if (c.row_basis[i] != c.col_basis[i]) {
      throw InvalidInput("visibility: input and analysis orderings do not match");
    }
    diag += c.raw(i, i);
    for (int j = 0; j < c.cols(); ++j) {
      if (c.col_basis[j] == c.row_basis[i]) total += c.raw(i, j);
    }
  }
  if (!(total > 0.0)) throw InvalidInput("visibility: all-zero crosstalk matrix");
  return diag / total;
}

double accuracy(const CrosstalkMatrix& c) {
  if (c.rows() != c.cols() || c.rows() == 0) throw InvalidInput("accuracy: matrix must be square");
  return c.normalized.diagonal().mean();
}

PhaseMask shift_mask(const PhaseMask& mask, int dx, int dy) {
  const int n = mask.grid().n;
  std::vector<double> out(mask.grid().size(), 0.0);
  for (int row = 0; row < n; ++row) {
    const int src_row = row - dy;
    if (src_row < 0 || src_row >= n) continue;
    for (int col = 0; col < n; ++col) {
      const int src_col = col - dx;
      if (src_col < 0 || src_col >= n) continue;
      out[static_cast<std::size_t>(row) * n + col] = mask.at(src_row, src_col);
    }
  }
  return PhaseMask(mask.grid(), std::move(out));
}

ConverterDesign misalign(const ConverterDesign& design, const MisalignmentSpec& spec) {
  if (spec.offsets.size() != design.masks.size()) {
    throw InvalidInput("misalign: need one offset per mask");
  }
  const int limit = design.config.grid.n / 8;
  ConverterDesign out = design;
  for (std::size_t t = 0; t < spec.offsets.size(); ++t) {
    const auto [dx, dy] = spec.offsets[t];
    if (std::abs(dx) > limit || std::abs(dy) > limit) {
      throw InvalidInput("misalign: offset exceeds n/8 pixels");
    }
    if (dx != 0 || dy != 0) out.masks[t] = shift_mask(design.masks[t], dx, dy);
  }
  return out;
}

void GaParams::validate() const {
  if (population < 1) throw InvalidInput("ga: population must be >= 1");
  if (generations < 1) throw InvalidInput("ga: generations must be >= 1");
  if (bound < 0) throw InvalidInput("ga: bound must be >= 0");
  if (tournament_size < 1) throw InvalidInput("ga: tournament_size must be >= 1");
  if (elitism < 0 || elitism > population) throw InvalidInput("ga: elitism out of range");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw InvalidInput("ga: bad mutation_rate");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw InvalidInput("ga: bad crossover_rate");
}

namespace {

using Genome = std::vector<int>;

MisalignmentSpec to_spec(const Genome& g) {
  MisalignmentSpec s;
  for (std::size_t k = 0; k + 1 < g.size(); k += 2) s.offsets.emplace_back(g[k], g[k + 1]);
  return s;
}

MisalignmentSpec net_offsets(const MisalignmentSpec& injected, const MisalignmentSpec& correction) {
  if (injected.offsets.size() != correction.offsets.size()) {
    throw InvalidInput("alignment: offset lists differ in length");
  }
  MisalignmentSpec net;
  for (std::size_t t = 0; t < injected.offsets.size(); ++t) {
    net.offsets.emplace_back(injected.offsets[t].first - correction.offsets[t].first,
                             injected.offsets[t].second - correction.offsets[t].second);
  }
  return net;
}

int l1(const Genome& g) {
  int s = 0;
  for (int v : g) s += std::abs(v);
  return s;
}

std::string genome_text(const Genome& g) {
  std::string s;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) s += " ";
    s += std::to_string(g[k]);
  }
  return s;
}

}  // namespace

double alignment_fitness(const ConverterDesign& design, const MisalignmentSpec& injected,
                         const MisalignmentSpec& correction, std::span<const LabeledState> probes) {
  const auto shifted = misalign(design, net_offsets(injected, correction));
  return visibility(crosstalk_matrix(shifted, probes, probes));
}

GaResult genetic_align(const ConverterDesign& design, const MisalignmentSpec& injected,
                       const GaParams& params, std::span<const LabeledState> probes) {
  params.validate();
  design.validate();
  if (injected.offsets.size() != design.masks.size()) {
    throw InvalidInput("genetic_align: need one injected offset per mask");
  }
  const std::size_t genes = 2 * design.masks.size();
  std::vector<bool> free(genes, params.masks.empty());
  for (int t : params.masks) {
    if (t < 0 || t >= static_cast<int>(design.masks.size())) {
      throw InvalidInput("genetic_align: searched mask index out of range");
    }
    free[2 * t] = free[2 * t + 1] = true;
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> gene_dist(-params.bound, params.bound);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> step_dist(0, 3);
  constexpr int kSteps[] = {-2, -1, 1, 2};

  std::map<Genome, double> cache;
  GaResult result;
  auto evaluate = [&](const std::vector<Genome>& pop) {
    std::vector<Genome> pending;
    for (const auto& g : pop) {
      if (!cache.count(g) && std::find(pending.begin(), pending.end(), g) == pending.end()) {
        pending.push_back(g);
      }
    }
    std::vector<double> scores(pending.size());
    parallel_for(pending.size(), [&](std::size_t k) {
      scores[k] = alignment_fitness(design, injected, to_spec(pending[k]), probes);
    });
    for (std::size_t k = 0; k < pending.size(); ++k) cache.emplace(pending[k], scores[k]);
    result.evaluations += static_cast<int>(pending.size());
  };
  // higher fitness first; ties go to the smaller correction, then lexicographic
  auto better = [&](const Genome& a, const Genome& b) {
    const double fa = cache.at(a);
    const double fb = cache.at(b);
    if (fa != fb) return fa > fb;
    if (l1(a) != l1(b)) return l1(a) < l1(b);
    return a < b;
  };

  std::vector<Genome> pop;
  pop.emplace_back(genes, 0);  // nominal positions
  while (static_cast<int>(pop.size()) < params.population) {
    Genome g(genes, 0);
    for (std::size_t k = 0; k < genes; ++k) {
      if (free[k]) g[k] = gene_dist(rng);
    }
    pop.push_back(std::move(g));
  }

  for (int gen = 0; gen < params.generations; ++gen) {
    evaluate(pop);
    std::sort(pop.begin(), pop.end(), better);
    const double best = cache.at(pop.front());
    result.best_per_generation.push_back(best);
    char line[96];
    std::snprintf(line, sizeof(line), "%d,%.12f,", gen, best);
    result.log.push_back(line + genome_text(pop.front()));
    if (gen + 1 == params.generations) break;

    auto tournament = [&]() -> const Genome& {
      std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
      std::size_t winner = pick(rng);
      for (int k = 1; k < params.tournament_size; ++k) {
        const std::size_t challenger = pick(rng);
        if (better(pop[challenger], pop[winner])) winner = challenger;
      }
      return pop[winner];
    };

    std::vector<Genome> next(pop.begin(), pop.begin() + params.elitism);
    while (static_cast<int>(next.size()) < params.population) {
      Genome child = tournament();
      if (unit(rng) < params.crossover_rate) {
        const Genome& other = tournament();
        for (std::size_t k = 0; k < genes; ++k) {
          if (unit(rng) < 0.5) child[k] = other[k];
        }
      }
      for (std::size_t k = 0; k < genes; ++k) {
        if (free[k] && unit(rng) < params.mutation_rate) {
          child[k] = std::clamp(child[k] + kSteps[step_dist(rng)], -params.bound, params.bound);
        }
      }
      next.push_back(std::move(child));
    }
    pop = std::move(next);
  }

  result.recovered = to_spec(pop.front());
  result.best_fitness = cache.at(pop.front());
  return result;
}

GaResult genetic_align(const ConverterDesign& design, const MisalignmentSpec& injected,
                       const GaParams& params) {
  const auto probes = computational_states(design.basis.dim());
  return genetic_align(design, injected, params, probes);
}

}  // namespace mplc
