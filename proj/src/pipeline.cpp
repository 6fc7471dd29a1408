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

#include "mplc/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "mplc/io.hpp"
#include "mplc/parallel.hpp"

namespace mplc {

using json = nlohmann::json;

namespace {

constexpr const char* kManifestFormat = "mplc-design-1";

std::string mask_name(int t, const char* ext) {
  std::ostringstream os;
  os << "mask_" << std::setw(2) << std::setfill('0') << t << ext;
  return os.str();
}

json matrix_to_json(const Matrix& m) { return json::parse(matrix_json(static_cast<int>(m.rows()), m)); }

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void append_log(const fs::path& dir, const std::string& line) {
  fs::create_directories(dir);
  std::ofstream os(dir / "run.log", std::ios::app);
  os << timestamp() << " threads=" << num_threads() << " " << line << '\n';
}

/// (directory, main file) for an --out argument that may name a .json file.
std::pair<fs::path, fs::path> split_out(const fs::path& out, const char* default_name) {
  if (out.extension() == ".json") {
    const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    return {dir, out};
  }
  return {out, out / default_name};
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

void save_bundle(const fs::path& dir, const DesignBundle& bundle) {
  fs::create_directories(dir);
  const auto& design = bundle.design;
  json manifest;
  manifest["format"] = kManifestFormat;
  manifest["config"] = json::parse(job_config_json(bundle.job));
  manifest["gate"] = matrix_to_json(design.gate.entries());
  manifest["trace"] = bundle.trace.values;
  manifest["seed"] = bundle.job.seed;
  json masks = json::array();
  for (std::size_t t = 0; t < design.masks.size(); ++t) {
    const int index = static_cast<int>(t);
    save_mask(dir / mask_name(index, ".msk"), design.masks[t]);
    save_mask_png(dir / mask_name(index, ".png"), design.masks[t]);
    masks.push_back({{"msk", mask_name(index, ".msk")}, {"png", mask_name(index, ".png")}});
  }
  manifest["masks"] = std::move(masks);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  std::ostringstream trace;
  trace << "iteration,trace\n";
  for (std::size_t i = 0; i < bundle.trace.values.size(); ++i) {
    trace << i + 1 << ',' << std::setprecision(17) << bundle.trace.values[i] << '\n';
  }
  write_text(dir / "trace.csv", trace.str());
}

DesignBundle load_bundle(const fs::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_text(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw IoError((dir / "manifest.json").string() + ": " + e.what());
  }
  if (manifest.value("format", "") != kManifestFormat) {
    throw IoError((dir / "manifest.json").string() + ": not a design manifest");
  }
  DesignBundle b;
  try {
    b.job = parse_job_config(manifest.at("config").dump());
    b.job.gate = GateMatrix(matrix_from_json(manifest.at("gate").dump()));
    b.trace.values = manifest.at("trace").get<std::vector<double>>();
    for (const auto& entry : manifest.at("masks")) {
      b.design.masks.push_back(load_mask(dir / entry.at("msk").get<std::string>(), b.job.grid.wavelength));
    }
  } catch (const json::exception& e) {
    throw IoError((dir / "manifest.json").string() + ": " + e.what());
  }
  b.design.config = b.job.wfm;
  b.design.basis = b.job.basis;
  b.design.gate = *b.job.gate;
  b.design.validate();
  return b;
}

std::vector<LabeledState> probe_states(const std::string& probes, int d) {
  if (probes == "mubs") return mub_states(d);
  if (probes == "computational") return computational_states(d);
  throw InvalidInput("probes must be \"mubs\" or \"computational\"");
}

GateMatrix sweep_gate(const SweepSpec& spec, int d) {
  return spec.family == "h" ? h_gate(d, spec.m) : x_gate(d, spec.m);
}

std::vector<SweepRow> sweep_planes(const SweepSpec& spec, const WfmConfig& config_template,
                                   const ModeBasis& basis_template) {
  std::vector<SweepRow> rows;
  for (int d : spec.dims) {
    const ModeBasis basis = ModeBasis::oam(d, basis_template.input_waist, basis_template.output_waist_scale);
    const GateMatrix gate = sweep_gate(spec, d);
    for (int planes : spec.plane_counts) {
      WfmConfig config = config_template;
      config.n_planes = planes;
      const auto result = design_converter(gate, basis, config);
      const auto comp = computational_states(d);
      const auto c = crosstalk_matrix(result.design, comp, comp);
      const auto chi = reconstruct_chi(probe_channel(result.design));
      SweepRow row;
      row.d = d;
      row.n_planes = planes;
      row.visibility = visibility(c);
      row.purity = process_purity(choi_from_chi(chi));
      row.fidelity = process_fidelity(chi, chi_from_transfer(gate.entries()));
      row.trace = result.trace.final_value();
      row.capture = std::accumulate(c.capture_efficiency.begin(), c.capture_efficiency.end(), 0.0) / d;
      rows.push_back(row);
    }
  }
  return rows;
}

DesignBundle cmd_design(const JobConfig& job, const fs::path& out) {
  if (!job.gate) throw ConfigError("config: missing field 'gate'");
  if (job.basis.modes.empty()) throw ConfigError("config: missing field 'basis.modes'");
  auto result = design_converter(*job.gate, job.basis, job.wfm);
  DesignBundle bundle{std::move(result.design), std::move(result.trace), job};
  save_bundle(out, bundle);
  append_log(out, "design iterations=" + std::to_string(bundle.trace.values.size()) +
                      " trace=" + fixed(bundle.trace.final_value()));
  return bundle;
}

CrosstalkMatrix cmd_evaluate(const fs::path& design_dir, const std::string& probes, const fs::path& out) {
  const auto bundle = load_bundle(design_dir);
  const auto states = probe_states(probes, bundle.design.basis.dim());
  auto c = crosstalk_matrix(bundle.design, states, states);
  const auto [dir, report] = split_out(out, "report.json");
  write_text(report, crosstalk_report_json(c));
  save_crosstalk_csv(dir / "crosstalk.csv", c);
  save_crosstalk_csv(dir / "crosstalk_raw.csv", c, false);
  return c;
}

TomoResult cmd_tomo(const fs::path& design_dir, const fs::path& out, bool ideal) {
  const auto bundle = load_bundle(design_dir);
  const Matrix& u = bundle.design.gate.entries();
  const int d = bundle.design.gate.dim();
  ProbeRecords records;
  if (ideal) {
    const Matrix kraus[] = {u};
    records = probe_records_from_kraus(kraus);
  } else {
    records = probe_channel(bundle.design);
  }
  TomoResult r;
  r.chi = reconstruct_chi(records);
  const auto choi = choi_from_chi(r.chi);
  r.purity = process_purity(choi);
  r.fidelity = process_fidelity(r.chi, chi_from_transfer(u));
  r.capture = std::accumulate(records.capture.begin(), records.capture.end(), 0.0) /
              static_cast<double>(records.capture.size());

  const auto [dir, chi_path] = split_out(out, "chi.json");
  write_text(chi_path, matrix_json(d, r.chi.chi));
  save_matrix_csv(dir / "chi.csv", r.chi.chi);
  write_text(dir / "choi.json", matrix_json(d, choi.rho));
  json metrics = {{"d", d},
                  {"purity", r.purity},
                  {"fidelity", r.fidelity},
                  {"mean_capture", r.capture},
                  {"ideal", ideal},
                  {"basis_convention", kBasisConvention}};
  write_text(dir / "metrics.json", metrics.dump(2) + "\n");
  return r;
}

std::vector<SweepRow> cmd_sweep(const JobConfig& job, const fs::path& out) {
  if (!job.sweep) throw ConfigError("config: missing field 'sweep'");
  const auto rows = sweep_planes(*job.sweep, job.wfm, job.basis);
  std::ostringstream b, c;
  b << "d,n_planes,visibility,trace,capture\n";
  c << "d,n_planes,purity,fidelity\n";
  b << std::setprecision(17);
  c << std::setprecision(17);
  for (const auto& r : rows) {
    b << r.d << ',' << r.n_planes << ',' << r.visibility << ',' << r.trace << ',' << r.capture << '\n';
    c << r.d << ',' << r.n_planes << ',' << r.purity << ',' << r.fidelity << '\n';
  }
  write_text(out / "fig1b.csv", b.str());
  write_text(out / "fig1c.csv", c.str());
  append_log(out, "sweep cells=" + std::to_string(rows.size()));
  return rows;
}

GaResult cmd_align(const fs::path& design_dir, const MisalignmentSpec& injected, const GaParams& params,
                   const fs::path& out, const std::string& probes) {
  const auto bundle = load_bundle(design_dir);
  const MisalignmentSpec inj =
      injected.offsets.empty() ? MisalignmentSpec::zeros(bundle.design.config.n_planes) : injected;
  const auto states = probe_states(probes, bundle.design.basis.dim());
  auto result = genetic_align(bundle.design, inj, params, states);

  auto offsets = [](const MisalignmentSpec& s) {
    json a = json::array();
    for (const auto& [dx, dy] : s.offsets) a.push_back({dx, dy});
    return a;
  };
  const json report = {{"injected", offsets(inj)},
                       {"recovered", offsets(result.recovered)},
                       {"best_fitness", result.best_fitness},
                       {"evaluations", result.evaluations},
                       {"probes", probes},
                       {"seed", params.seed}};
  const auto [dir, path] = split_out(out, "offsets.json");
  write_text(path, report.dump(2) + "\n");
  std::ostringstream log;
  log << "generation,best_fitness,genome\n";
  for (const auto& line : result.log) log << line << '\n';
  write_text(dir / "ga_log.csv", log.str());
  return result;
}

void cmd_export_masks(const fs::path& design_dir, const fs::path& out) {
  const auto bundle = load_bundle(design_dir);
  for (std::size_t t = 0; t < bundle.design.masks.size(); ++t) {
    const int index = static_cast<int>(t);
    save_mask_png(out / mask_name(index, ".png"), bundle.design.masks[t]);
    save_mask_csv(out / mask_name(index, ".csv"), bundle.design.masks[t]);
  }
}

}  // namespace mplc
