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

#include "mplc/wfm.hpp"

#include <cmath>

#include "mplc/error.hpp"
#include "mplc/parallel.hpp"

namespace mplc {

void WfmConfig::validate() const {
  grid.validate();
  if (n_planes < 1) throw InvalidInput("wfm: n_planes must be >= 1");
  if (!(plane_spacing > 0.0)) throw InvalidInput("wfm: plane_spacing must be > 0");
  if (!(lead_in >= 0.0) || !(lead_out >= 0.0)) throw InvalidInput("wfm: lead distances must be >= 0");
  if (max_iterations < 1) throw InvalidInput("wfm: max_iterations must be >= 1");
  if (!(convergence_epsilon >= 0.0)) throw InvalidInput("wfm: convergence_epsilon must be >= 0");
  if (stall_iterations < 1) throw InvalidInput("wfm: stall_iterations must be >= 1");
  PropagationSpec{plane_spacing, band_limit_fraction}.validate();
}

WfmConfig WfmConfig::make(const GridSpec& grid, int n_planes, double plane_spacing) {
  WfmConfig c;
  c.grid = grid;
  c.n_planes = n_planes;
  c.plane_spacing = plane_spacing;
  c.lead_in = plane_spacing / 2.0;
  c.lead_out = plane_spacing / 2.0;
  c.validate();
  return c;
}

void ConverterDesign::validate() const {
  config.validate();
  if (static_cast<int>(masks.size()) != config.n_planes) {
    throw InvalidInput("design: mask count does not match n_planes");
  }
  for (const auto& m : masks) require_same_grid(m.grid(), config.grid, "design mask");
  basis.validate();
  if (gate.dim() != basis.dim()) throw InvalidInput("design: gate and basis dimension differ");
}

namespace {

void check_fields(std::span<const Field> fields, const GridSpec& grid, const char* what) {
  for (const auto& f : fields) {
    require_same_grid(f.grid(), grid, what);
    if (std::abs(f.power() - 1.0) > 1e-6) {
      throw InvalidInput(std::string(what) + ": fields must be normalized");
    }
  }
}

cplx unit_conj(cplx z) {
  const double mag = std::abs(z);
  return mag > 0.0 ? std::conj(z) / mag : cplx{1.0, 0.0};
}

}  // namespace

WfmResult wfm_optimize(std::span<const Field> inputs, std::span<const Field> targets,
                       const WfmConfig& config) {
  config.validate();
  if (inputs.empty() || inputs.size() != targets.size()) {
    throw InvalidInput("wfm: need equal, non-zero numbers of inputs and targets");
  }
  check_fields(inputs, config.grid, "wfm inputs");
  check_fields(targets, config.grid, "wfm targets");

  const std::size_t d = inputs.size();
  const int planes = config.n_planes;
  const std::size_t pixels = config.grid.size();
  const Propagator lead_in(config.grid, {config.lead_in, config.band_limit_fraction});
  const Propagator spacing(config.grid, {config.plane_spacing, config.band_limit_fraction});
  const Propagator lead_out(config.grid, {config.lead_out, config.band_limit_fraction});

  std::vector<std::vector<double>> phase(planes, std::vector<double>(pixels, 0.0));
  // forward[r][t]: mode r just before mask t
  std::vector<std::vector<Field>> forward(d, std::vector<Field>(planes));
  std::vector<double> overlap_sq(d);

  auto forward_pass = [&] {
    parallel_for(d, [&](std::size_t r) {
      Field f = inputs[r];
      lead_in.forward(f);
      for (int t = 0; t < planes; ++t) {
        forward[r][t] = f;
        auto data = f.data();
        for (std::size_t i = 0; i < pixels; ++i) data[i] *= std::polar(1.0, phase[t][i]);
        if (t + 1 < planes) {
          spacing.forward(f);
        } else {
          lead_out.forward(f);
        }
      }
      overlap_sq[r] = std::norm(inner_product(targets[r], f));
    });
    double sum = 0.0;
    for (double v : overlap_sq) sum += v;
    return sum / static_cast<double>(d);
  };

  WfmResult result;
  forward_pass();
  std::vector<Field> backward(d);
  std::vector<cplx> pair_overlap(d);
  std::vector<cplx> pair_phase(d);
  std::vector<cplx> total(pixels);
  int stalled = 0;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    parallel_for(d, [&](std::size_t r) {
      backward[r] = targets[r];
      lead_out.backward(backward[r]);
    });

    for (int t = planes - 1; t >= 0; --t) {
      const auto& mask_phase = phase[t];
      // e^{-i phi_rst} from the area-integrated overlap of each pair
      parallel_for(d, [&](std::size_t r) {
        const auto b = backward[r].data();
        const auto f = forward[r][t].data();
        cplx sum{};
        for (std::size_t i = 0; i < pixels; ++i) {
          sum += std::conj(b[i]) * f[i] * std::polar(1.0, mask_phase[i]);
        }
        pair_overlap[r] = sum;
      });
      if (config.phase_reference == PhaseReference::kPerPair) {
        for (std::size_t r = 0; r < d; ++r) pair_phase[r] = unit_conj(pair_overlap[r]);
      } else {
        cplx common{};
        for (std::size_t r = 0; r < d; ++r) common += pair_overlap[r];
        std::fill(pair_phase.begin(), pair_phase.end(), unit_conj(common));
      }

      std::fill(total.begin(), total.end(), cplx{});
      for (std::size_t r = 0; r < d; ++r) {
        const auto b = backward[r].data();
        const auto f = forward[r][t].data();
        const cplx w = pair_phase[r];
        for (std::size_t i = 0; i < pixels; ++i) total[i] += std::conj(b[i]) * f[i] * w;
      }
      auto& updated = phase[t];
      for (std::size_t i = 0; i < pixels; ++i) {
        const cplx s = total[i] * std::polar(1.0, updated[i]);
        const double delta = (s == cplx{}) ? 0.0 : -std::arg(s);
        updated[i] = wrap_phase(updated[i] + delta);
      }

      parallel_for(d, [&](std::size_t r) {
        auto b = backward[r].data();
        for (std::size_t i = 0; i < pixels; ++i) b[i] *= std::polar(1.0, -updated[i]);
        if (t > 0) spacing.backward(backward[r]);
      });
    }

    const double value = forward_pass();
    const double prev = result.trace.values.empty() ? -1.0 : result.trace.values.back();
    result.trace.values.push_back(value);
    stalled = (value - prev < config.convergence_epsilon) ? stalled + 1 : 0;
    if (stalled >= config.stall_iterations) break;
  }

  result.masks.reserve(planes);
  for (int t = 0; t < planes; ++t) result.masks.emplace_back(config.grid, std::move(phase[t]));
  return result;
}

DesignResult design_converter(const GateMatrix& gate, const ModeBasis& basis,
                              const WfmConfig& config) {
  const auto fields = target_fields(gate, basis, config.grid);
  auto wfm = wfm_optimize(fields.inputs, fields.targets, config);
  DesignResult out{{std::move(wfm.masks), config, basis, gate}, std::move(wfm.trace)};
  out.design.validate();
  return out;
}

ConverterSimulator::ConverterSimulator(const ConverterDesign& design)
    : design_(design),
      lead_in_(design.config.grid, {design.config.lead_in, design.config.band_limit_fraction}),
      spacing_(design.config.grid, {design.config.plane_spacing, design.config.band_limit_fraction}),
      lead_out_(design.config.grid, {design.config.lead_out, design.config.band_limit_fraction}) {
  design_.validate();
}

Field ConverterSimulator::run(const Field& input) const {
  require_same_grid(input.grid(), design_.config.grid, "simulate_converter");
  Field f = input;
  lead_in_.forward(f);
  const auto planes = design_.masks.size();
  for (std::size_t t = 0; t < planes; ++t) {
    apply_mask_inplace(f, design_.masks[t]);
    if (t + 1 < planes) {
      spacing_.forward(f);
    } else {
      lead_out_.forward(f);
    }
  }
  return f;
}

std::vector<Field> ConverterSimulator::run_all(std::span<const Field> inputs) const {
  std::vector<Field> out(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) { out[i] = run(inputs[i]); });
  return out;
}

Field simulate_converter(const ConverterDesign& design, const Field& input) {
  return ConverterSimulator(design).run(input);
}

ConverterDesign empty_design(const WfmConfig& config, const ModeBasis& basis, const GateMatrix& gate) {
  ConverterDesign design{std::vector<PhaseMask>(config.n_planes, PhaseMask(config.grid)), config,
                         basis, gate};
  design.validate();
  return design;
}

}  // namespace mplc
