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

#include "mplc/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace mplc {

using json = nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError("config: missing field '" + name(key) + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  Reader child(const std::string& key) { return Reader(raw(key), name(key)); }

  int integer(const std::string& key) { return as_int(raw(key), name(key)); }
  int integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

  double number(const std::string& key) { return as_double(raw(key), name(key)); }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, std::string fallback) {
    return has(key) ? text(key) : std::move(fallback);
  }

  std::vector<int> integers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array() || v.empty()) fail(key, "must be a non-empty array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_int(v[i], name(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  /// Rejects keys that were never read, which catches misspelled options.
  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) throw ConfigError("config: unknown field '" + name(item.key()) + "'");
    }
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("config: field '" + (key.empty() ? path_ : name(key)) + "' " + what);
  }

  static int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError("config: field '" + where + "' must be an integer");
    return v.get<int>();
  }

  static double as_double(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("config: field '" + where + "' must be a number");
    return v.get<double>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double positive(Reader& r, const std::string& key, double value) {
  if (!(value > 0.0)) r.fail(key, "must be > 0");
  return value;
}

Matrix matrix_field(Reader& r) {
  const json& re = r.raw("re");
  const json& im = r.raw("im");
  if (!re.is_array() || re.empty() || !im.is_array() || im.size() != re.size()) {
    r.fail("re", "and 'im' must be equal-size arrays of rows");
  }
  const auto n = static_cast<Eigen::Index>(re.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!re[i].is_array() || !im[i].is_array() || static_cast<Eigen::Index>(re[i].size()) != n ||
        im[i].size() != re[i].size()) {
      r.fail("re", "must be a square matrix");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::string at = "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      m(i, k) = {Reader::as_double(re[i][k], r.name("re") + at), Reader::as_double(im[i][k], r.name("im") + at)};
    }
  }
  return m;
}

GateMatrix parse_gate(Reader r) {
  const std::string type = r.text("type");
  GateMatrix gate;
  try {
    if (type == "x" || type == "h") {
      const int d = r.integer("d");
      const int m = r.integer("m");
      gate = type == "x" ? x_gate(d, m) : h_gate(d, m);
    } else if (type == "cx") {
      gate = cx_gate(r.integer("d_ctrl"), r.integer("d_tgt"));
    } else if (type == "compose") {
      const json& list = r.raw("gates");
      if (!list.is_array() || list.empty()) r.fail("gates", "must be a non-empty array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        GateMatrix g = parse_gate(Reader(list[i], r.name("gates") + "[" + std::to_string(i) + "]"));
        gate = i == 0 ? g : compose(g, gate);
      }
    } else if (type == "matrix") {
      gate = GateMatrix(matrix_field(r));
    } else {
      r.fail("type", "must be one of x, h, cx, compose, matrix");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ConfigError("config: field '" + r.name("type") + "': " + e.what());
  }
  r.finish();
  return gate;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ModeBasis parse_basis(Reader r) {
  ModeBasis basis;
  basis.input_waist = positive(r, "input_waist", r.number("input_waist"));
  basis.output_waist_scale = positive(r, "output_waist_scale", r.number("output_waist_scale", 1.0));
  if (r.has("modes")) {
    const json& modes = r.raw("modes");
    if (!modes.is_array() || modes.empty()) r.fail("modes", "must be a non-empty array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      Reader m(modes[i], r.name("modes") + "[" + std::to_string(i) + "]");
      const int p = m.integer("p");
      const int l = m.integer("l");
      if (p < 0) m.fail("p", "must be >= 0");
      m.finish();
      basis.modes.emplace_back(p, l);
    }
  }
  r.finish();
  return basis;
}

GridSpec parse_grid(Reader r, const ModeBasis& basis) {
  GridSpec grid;
  grid.n = r.integer("n", 256);
  grid.wavelength = positive(r, "wavelength", r.number("wavelength"));
  const double widest = basis.input_waist * std::max(1.0, basis.output_waist_scale);
  grid.pitch = r.has("pitch") ? positive(r, "pitch", r.number("pitch")) : 12.0 * widest / grid.n;
  r.finish();
  try {
    grid.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: field 'grid': ") + e.what());
  }
  return grid;
}

WfmConfig parse_wfm(Reader r, const GridSpec& grid) {
  WfmConfig c;
  c.grid = grid;
  c.n_planes = r.integer("n_planes", c.n_planes);
  c.plane_spacing = positive(r, "plane_spacing", r.number("plane_spacing", c.plane_spacing));
  c.lead_in = r.number("lead_in", c.plane_spacing / 2.0);
  c.lead_out = r.number("lead_out", c.plane_spacing / 2.0);
  c.max_iterations = r.integer("max_iterations", c.max_iterations);
  c.convergence_epsilon = r.number("convergence_epsilon", c.convergence_epsilon);
  c.stall_iterations = r.integer("stall_iterations", c.stall_iterations);
  c.band_limit_fraction = r.number("band_limit_fraction", c.band_limit_fraction);
  const std::string ref = r.text("phase_reference", "common");
  if (ref == "common") {
    c.phase_reference = PhaseReference::kCommon;
  } else if (ref == "per_pair") {
    c.phase_reference = PhaseReference::kPerPair;
  } else {
    r.fail("phase_reference", "must be \"common\" or \"per_pair\"");
  }
  r.finish();
  try {
    c.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: field 'wfm': ") + e.what());
  }
  return c;
}

GaParams parse_ga(Reader r) {
  GaParams p;
  p.population = r.integer("population", p.population);
  p.generations = r.integer("generations", p.generations);
  p.mutation_rate = r.number("mutation_rate", p.mutation_rate);
  p.tournament_size = r.integer("tournament_size", p.tournament_size);
  p.elitism = r.integer("elitism", p.elitism);
  p.crossover_rate = r.number("crossover_rate", p.crossover_rate);
  p.bound = r.integer("bound", p.bound);
  if (r.has("masks")) p.masks = r.integers("masks");
  r.finish();
  try {
    p.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: field 'ga': ") + e.what());
  }
  return p;
}

MisalignmentSpec parse_offsets(Reader& r, const std::string& key) {
  const json& v = r.raw(key);
  if (!v.is_array()) r.fail(key, "must be an array of [dx, dy] pairs");
  MisalignmentSpec spec;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = r.name(key) + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) throw ConfigError("config: field '" + where + "' must be [dx, dy]");
    spec.offsets.emplace_back(Reader::as_int(v[i][0], where + "[0]"), Reader::as_int(v[i][1], where + "[1]"));
  }
  return spec;
}

SweepSpec parse_sweep(Reader r) {
  SweepSpec s;
  s.family = r.text("family", s.family);
  if (s.family != "x" && s.family != "h") r.fail("family", "must be \"x\" or \"h\"");
  s.m = r.integer("m", s.m);
  if (r.has("dims")) s.dims = r.integers("dims");
  if (r.has("plane_counts")) s.plane_counts = r.integers("plane_counts");
  for (int d : s.dims) {
    if (d < 2) r.fail("dims", "entries must be >= 2");
  }
  for (int p : s.plane_counts) {
    if (p < 1) r.fail("plane_counts", "entries must be >= 1");
  }
  r.finish();
  return s;
}

json offsets_json(const MisalignmentSpec& spec) {
  json out = json::array();
  for (const auto& [dx, dy] : spec.offsets) out.push_back({dx, dy});
  return out;
}

}  // namespace

GateMatrix gate_from_json(const std::string& text) {
  const json j = parse_json(text);
  return parse_gate(Reader(j, "gate"));
}

JobConfig parse_job_config(const std::string& text) {
  const json j = parse_json(text);
  Reader root(j, "");
  JobConfig job;
  job.basis = parse_basis(root.child("basis"));
  job.grid = parse_grid(root.child("grid"), job.basis);
  if (root.has("gate")) {
    job.gate = parse_gate(root.child("gate"));
    job.gate_json = root.raw("gate").dump();
    if (!job.basis.modes.empty() && job.gate->dim() != job.basis.dim()) {
      throw ConfigError("config: field 'gate' has dimension " + std::to_string(job.gate->dim()) +
                        " but 'basis.modes' lists " + std::to_string(job.basis.dim()) + " modes");
    }
  }
  job.wfm = root.has("wfm") ? parse_wfm(root.child("wfm"), job.grid) : parse_wfm(Reader(json::object(), "wfm"), job.grid);
  job.probes = root.text("probes", job.probes);
  if (job.probes != "mubs" && job.probes != "computational") {
    root.fail("probes", "must be \"mubs\" or \"computational\"");
  }
  if (root.has("seed")) {
    const json& s = root.raw("seed");
    if (!s.is_number_unsigned()) root.fail("seed", "must be a non-negative integer");
    job.seed = s.get<std::uint64_t>();
  }
  if (root.has("ga")) job.ga = parse_ga(root.child("ga"));
  job.ga.seed = job.seed;
  if (root.has("align")) {
    Reader align = root.child("align");
    job.injected = parse_offsets(align, "injected");
    align.finish();
  }
  if (root.has("sweep")) job.sweep = parse_sweep(root.child("sweep"));
  root.finish();
  return job;
}

JobConfig load_job_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_job_config(ss.str());
}

std::string job_config_json(const JobConfig& job) {
  json j;
  j["grid"] = {{"n", job.grid.n}, {"pitch", job.grid.pitch}, {"wavelength", job.grid.wavelength}};
  json modes = json::array();
  for (const auto& [p, l] : job.basis.modes) modes.push_back({{"p", p}, {"l", l}});
  j["basis"] = {{"input_waist", job.basis.input_waist},
                {"output_waist_scale", job.basis.output_waist_scale}};
  if (!modes.empty()) j["basis"]["modes"] = std::move(modes);
  if (!job.gate_json.empty()) j["gate"] = json::parse(job.gate_json);
  const WfmConfig& w = job.wfm;
  j["wfm"] = {{"n_planes", w.n_planes},
              {"plane_spacing", w.plane_spacing},
              {"lead_in", w.lead_in},
              {"lead_out", w.lead_out},
              {"max_iterations", w.max_iterations},
              {"convergence_epsilon", w.convergence_epsilon},
              {"stall_iterations", w.stall_iterations},
              {"band_limit_fraction", w.band_limit_fraction},
              {"phase_reference", w.phase_reference == PhaseReference::kCommon ? "common" : "per_pair"}};
  j["probes"] = job.probes;
  j["seed"] = job.seed;
  const GaParams& g = job.ga;
  j["ga"] = {{"population", g.population},   {"generations", g.generations},
             {"mutation_rate", g.mutation_rate}, {"tournament_size", g.tournament_size},
             {"elitism", g.elitism},         {"crossover_rate", g.crossover_rate},
             {"bound", g.bound}};
  if (!g.masks.empty()) j["ga"]["masks"] = g.masks;
  if (!job.injected.offsets.empty()) j["align"] = {{"injected", offsets_json(job.injected)}};
  if (job.sweep) {
    j["sweep"] = {{"family", job.sweep->family},
                  {"m", job.sweep->m},
                  {"dims", job.sweep->dims},
                  {"plane_counts", job.sweep->plane_counts}};
  }
  return j.dump(2) + "\n";
}

}  // namespace mplc
