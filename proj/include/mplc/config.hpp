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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mplc/error.hpp"
#include "mplc/evaluate.hpp"
#include "mplc/gates.hpp"
#include "mplc/wfm.hpp"

namespace mplc {

/// Schema violation in a job config; the message names the offending field.
struct ConfigError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct SweepSpec {
  std::string family = "x";  // "x" or "h"
  int m = 1;
  std::vector<int> dims{3, 4, 5};
  std::vector<int> plane_counts{2, 3, 5, 8};
};

/// Parsed job file. Lengths in meters, angles in radians.
struct JobConfig {
  GridSpec grid;
  ModeBasis basis;  // modes may be empty for sweep-only jobs
  std::optional<GateMatrix> gate;
  std::string gate_json;  // canonical gate spec, "" if absent
  WfmConfig wfm;
  std::string probes = "mubs";
  std::uint64_t seed = 1;
  GaParams ga;
  MisalignmentSpec injected;
  std::optional<SweepSpec> sweep;
};

/// Gate spec objects:
///   {"type": "x" | "h", "d": int, "m": int}
///   {"type": "cx", "d_ctrl": int, "d_tgt": int}
///   {"type": "compose", "gates": [g1, g2, ...]}  g1 acts first
///   {"type": "matrix", "re": [[...]], "im": [[...]]}
GateMatrix gate_from_json(const std::string& text);

JobConfig parse_job_config(const std::string& text);
JobConfig load_job_config(const std::filesystem::path& path);

/// Canonical JSON of a parsed config (sorted keys, every default spelled out).
std::string job_config_json(const JobConfig& job);

}  // namespace mplc
