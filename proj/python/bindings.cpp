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

// Python bindings for the mplc core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdio>

#include "mplc/config.hpp"
#include "mplc/error.hpp"
#include "mplc/evaluate.hpp"
#include "mplc/fields.hpp"
#include "mplc/gates.hpp"
#include "mplc/parallel.hpp"
#include "mplc/pipeline.hpp"
#include "mplc/propagation.hpp"
#include "mplc/tomography.hpp"
#include "mplc/wfm.hpp"

namespace py = pybind11;
using namespace mplc;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<cplx> to_numpy(const Field& f) {
  py::array_t<cplx> out({f.n(), f.n()});
  std::copy(f.data().begin(), f.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> to_numpy(const PhaseMask& m) {
  const int n = m.grid().n;
  py::array_t<double> out({n, n});
  std::copy(m.phase().begin(), m.phase().end(), out.mutable_data());
  return out;
}

Field from_numpy(const ComplexArray& a, const GridSpec& grid) {
  if (a.ndim() != 2 || a.shape(0) != grid.n || a.shape(1) != grid.n) {
    throw InvalidInput("field array must have shape (n, n) matching the grid");
  }
  return Field(grid, std::vector<cplx>(a.data(), a.data() + a.size()));
}

std::vector<LabeledState> states_for(const std::string& probes, int d) { return probe_states(probes, d); }

py::dict crosstalk_dict(const CrosstalkMatrix& c) {
  py::dict out;
  out["raw"] = c.raw;
  out["normalized"] = c.normalized;
  out["row_labels"] = c.row_labels;
  out["col_labels"] = c.col_labels;
  out["capture_efficiency"] = c.capture_efficiency;
  out["visibility"] = visibility(c);
  out["accuracy"] = accuracy(c);
  return out;
}

py::dict tomography_dict(const ProcessMatrix& chi, const Matrix& gate) {
  const auto choi = choi_from_chi(chi);
  py::dict out;
  out["chi"] = chi.chi;
  out["choi"] = choi.rho;
  out["purity"] = process_purity(choi);
  out["fidelity"] = process_fidelity(chi, chi_from_transfer(gate));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-plane light conversion core";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("num_threads", &num_threads);
  m.def("set_num_threads", &set_num_threads, py::arg("threads"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int n, double pitch, double wavelength) {
             GridSpec g{n, pitch, wavelength};
             g.validate();
             return g;
           }),
           py::arg("n"), py::arg("pitch"), py::arg("wavelength"))
      .def_readonly("n", &GridSpec::n)
      .def_readonly("pitch", &GridSpec::pitch)
      .def_readonly("wavelength", &GridSpec::wavelength)
      .def("window", &GridSpec::window)
      .def("__repr__", [](const GridSpec& g) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "GridSpec(n=%d, pitch=%g, wavelength=%g)", g.n, g.pitch, g.wavelength);
        return std::string(buf);
      });
  m.def("grid_for_waist", &grid_for_waist, py::arg("waist"), py::arg("wavelength"), py::arg("n") = 256,
        py::arg("window_over_waist") = 12.0);

  m.def(
      "lg_mode",
      [](int p, int l, double waist, const GridSpec& grid) { return to_numpy(lg_mode({p, l, waist}, grid)); },
      py::arg("p"), py::arg("l"), py::arg("waist"), py::arg("grid"));
  m.def(
      "inner_product",
      [](const ComplexArray& a, const ComplexArray& b, const GridSpec& grid) {
        return inner_product(from_numpy(a, grid), from_numpy(b, grid));
      },
      py::arg("a"), py::arg("b"), py::arg("grid"));
  m.def(
      "propagate",
      [](const ComplexArray& field, const GridSpec& grid, double distance, double band_limit_fraction) {
        return to_numpy(propagate(from_numpy(field, grid), {distance, band_limit_fraction}));
      },
      py::arg("field"), py::arg("grid"), py::arg("distance"), py::arg("band_limit_fraction") = 0.9);
  m.def(
      "backpropagate",
      [](const ComplexArray& field, const GridSpec& grid, double distance, double band_limit_fraction) {
        return to_numpy(backpropagate(from_numpy(field, grid), {distance, band_limit_fraction}));
      },
      py::arg("field"), py::arg("grid"), py::arg("distance"), py::arg("band_limit_fraction") = 0.9);

  m.def("x_gate", [](int d, int m_) { return x_gate(d, m_).entries(); }, py::arg("d"), py::arg("m"));
  m.def("h_gate", [](int d, int m_) { return h_gate(d, m_).entries(); }, py::arg("d"), py::arg("m"));
  m.def("cx_gate", [](int dc, int dt) { return cx_gate(dc, dt).entries(); }, py::arg("d_ctrl"), py::arg("d_tgt"));
  m.def("gate_from_json", [](const std::string& text) { return gate_from_json(text).entries(); }, py::arg("text"));
  m.def(
      "mub_states",
      [](int d) {
        py::list out;
        for (const auto& s : mub_states(d)) out.append(py::make_tuple(s.label(), Vector(s.coeffs)));
        return out;
      },
      py::arg("d"));

  py::class_<ModeBasis>(m, "ModeBasis")
      .def_static("oam", &ModeBasis::oam, py::arg("d"), py::arg("waist"), py::arg("output_waist_scale") = 1.0)
      .def_static("product", &ModeBasis::product, py::arg("ps"), py::arg("ls"), py::arg("waist"),
                  py::arg("output_waist_scale") = 1.0)
      .def_property_readonly("dim", &ModeBasis::dim)
      .def_readonly("modes", &ModeBasis::modes, "(p, l) pairs");

  py::enum_<PhaseReference>(m, "PhaseReference")
      .value("COMMON", PhaseReference::kCommon)
      .value("PER_PAIR", PhaseReference::kPerPair);

  py::class_<WfmConfig>(m, "WfmConfig")
      .def(py::init(&WfmConfig::make), py::arg("grid"), py::arg("n_planes") = 3, py::arg("plane_spacing") = 0.8)
      .def_readwrite("grid", &WfmConfig::grid)
      .def_readwrite("n_planes", &WfmConfig::n_planes)
      .def_readwrite("plane_spacing", &WfmConfig::plane_spacing)
      .def_readwrite("lead_in", &WfmConfig::lead_in)
      .def_readwrite("lead_out", &WfmConfig::lead_out)
      .def_readwrite("max_iterations", &WfmConfig::max_iterations)
      .def_readwrite("convergence_epsilon", &WfmConfig::convergence_epsilon)
      .def_readwrite("stall_iterations", &WfmConfig::stall_iterations)
      .def_readwrite("band_limit_fraction", &WfmConfig::band_limit_fraction)
      .def_readwrite("phase_reference", &WfmConfig::phase_reference);

  py::class_<ConverterDesign>(m, "Design")
      .def_property_readonly("masks",
                             [](const ConverterDesign& d) {
                               py::list out;
                               for (const auto& mask : d.masks) out.append(to_numpy(mask));
                               return out;
                             })
      .def_readonly("config", &ConverterDesign::config)
      .def_readonly("basis", &ConverterDesign::basis)
      .def_property_readonly("gate", [](const ConverterDesign& d) { return d.gate.entries(); })
      .def(
          "simulate",
          [](const ConverterDesign& d, const ComplexArray& input) {
            return to_numpy(simulate_converter(d, from_numpy(input, d.config.grid)));
          },
          py::arg("input"))
      .def(
          "crosstalk",
          [](const ConverterDesign& d, const std::string& probes) {
            const auto states = states_for(probes, d.basis.dim());
            return crosstalk_dict(crosstalk_matrix(d, states, states));
          },
          py::arg("probes") = "mubs")
      .def("tomography",
           [](const ConverterDesign& d) { return tomography_dict(reconstruct_chi(probe_channel(d)), d.gate.entries()); })
      .def(
          "misaligned",
          [](const ConverterDesign& d, const std::vector<std::pair<int, int>>& offsets) {
            return misalign(d, {offsets});
          },
          py::arg("offsets"));

  m.def(
      "design_converter",
      [](const Matrix& gate, const ModeBasis& basis, const WfmConfig& config) {
        auto r = design_converter(GateMatrix(gate), basis, config);
        return py::make_tuple(std::move(r.design), r.trace.values);
      },
      py::arg("gate"), py::arg("basis"), py::arg("config"),
      "Wavefront matching from zero masks. Returns (design, trace).");

  m.def(
      "genetic_align",
      [](const ConverterDesign& design, const std::vector<std::pair<int, int>>& injected, int population,
         int generations, std::uint64_t seed, std::vector<int> masks, const std::string& probes) {
        GaParams p;
        p.population = population;
        p.generations = generations;
        p.seed = seed;
        p.masks = std::move(masks);
        const auto states = states_for(probes, design.basis.dim());
        const auto r = genetic_align(design, {injected}, p, states);
        py::dict out;
        out["recovered"] = r.recovered.offsets;
        out["best_fitness"] = r.best_fitness;
        out["evaluations"] = r.evaluations;
        out["best_per_generation"] = r.best_per_generation;
        return out;
      },
      py::arg("design"), py::arg("injected"), py::arg("population") = 30, py::arg("generations") = 40,
      py::arg("seed") = 1, py::arg("masks") = std::vector<int>{}, py::arg("probes") = "computational");

  m.def("gell_mann_basis", &gell_mann_basis, py::arg("d"));
  m.def(
      "process_from_kraus",
      [](const std::vector<Matrix>& kraus, const Matrix& reference) {
        return tomography_dict(reconstruct_chi(probe_records_from_kraus(kraus)), reference);
      },
      py::arg("kraus"), py::arg("reference"),
      "Reconstructs chi from the exact probe records of a Kraus channel.");

  m.def("parse_config", [](const std::string& text) { return job_config_json(parse_job_config(text)); },
        py::arg("text"), "Validates a job config and returns its canonical JSON.");
  m.def(
      "load_design",
      [](const std::filesystem::path& dir) {
        auto b = load_bundle(dir);
        return py::make_tuple(std::move(b.design), b.trace.values);
      },
      py::arg("path"));

  m.def(
      "run_design",
      [](const std::filesystem::path& config, const std::filesystem::path& out) {
        return cmd_design(load_job_config(config), out).trace.values;
      },
      py::arg("config"), py::arg("out"));
  m.def(
      "run_evaluate",
      [](const std::filesystem::path& design, const std::string& probes, const std::filesystem::path& out) {
        return crosstalk_dict(cmd_evaluate(design, probes, out));
      },
      py::arg("design"), py::arg("probes"), py::arg("out"));
  m.def(
      "run_tomo",
      [](const std::filesystem::path& design, const std::filesystem::path& out, bool ideal) {
        const auto r = cmd_tomo(design, out, ideal);
        py::dict d;
        d["purity"] = r.purity;
        d["fidelity"] = r.fidelity;
        d["mean_capture"] = r.capture;
        d["chi"] = r.chi.chi;
        return d;
      },
      py::arg("design"), py::arg("out"), py::arg("ideal") = false);
  m.def(
      "run_sweep",
      [](const std::filesystem::path& config, const std::filesystem::path& out) {
        py::list rows;
        for (const auto& r : cmd_sweep(load_job_config(config), out)) {
          py::dict row;
          row["d"] = r.d;
          row["n_planes"] = r.n_planes;
          row["visibility"] = r.visibility;
          row["purity"] = r.purity;
          row["fidelity"] = r.fidelity;
          row["trace"] = r.trace;
          row["capture"] = r.capture;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config"), py::arg("out"));
  m.def(
      "run_export_masks",
      [](const std::filesystem::path& design, const std::filesystem::path& out) { cmd_export_masks(design, out); },
      py::arg("design"), py::arg("out"));
}
