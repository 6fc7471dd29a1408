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

#include <fstream>
#include <nlohmann/json.hpp>

#include "mplc/io.hpp"
#include "mplc/pipeline.hpp"
#include "reference.hpp"
#include "scratch_dir.hpp"

using namespace mplc;
using namespace mplc::testing;
using json = nlohmann::json;

namespace {

JobConfig small_job() { return load_job_config(fs::path(MPLC_SOURCE_DIR) / "tests" / "data" / "small_x1.json"); }

int line_count(const fs::path& p) {
  std::ifstream is(p);
  int n = 0;
  for (std::string line; std::getline(is, line);) ++n;
  return n;
}

}  // namespace

TEST(Bundle, SaveLoadRoundTrip) {
  const auto dir = scratch_dir();
  const auto bundle = cmd_design(small_job(), dir / "b");
  for (const char* f : {"manifest.json", "trace.csv", "run.log", "mask_00.msk", "mask_01.png"}) {
    EXPECT_TRUE(fs::exists(dir / "b" / f)) << f;
  }
  const auto back = load_bundle(dir / "b");
  EXPECT_EQ(back.design.masks, bundle.design.masks);
  EXPECT_EQ(back.trace.values, bundle.trace.values);
  EXPECT_EQ(back.design.gate.entries(), x_gate(3, 1).entries());
  EXPECT_EQ(back.design.config.grid, bundle.design.config.grid);
  EXPECT_EQ(job_config_json(back.job), job_config_json(bundle.job));
  EXPECT_EQ(line_count(dir / "b" / "trace.csv"), static_cast<int>(bundle.trace.values.size()) + 1);

  const json manifest = json::parse(read_text(dir / "b" / "manifest.json"));
  EXPECT_EQ(manifest.at("format"), "mplc-design-1");
  EXPECT_EQ(manifest.at("seed"), 3);
  EXPECT_EQ(manifest.at("masks").size(), 2u);
}

TEST(Bundle, RerunIsByteIdentical) {
  const auto dir = scratch_dir();
  cmd_design(small_job(), dir / "a");
  cmd_design(small_job(), dir / "b");
  for (const char* f : {"manifest.json", "trace.csv", "mask_00.msk", "mask_01.msk", "mask_00.png"}) {
    EXPECT_EQ(read_text(dir / "a" / f), read_text(dir / "b" / f)) << f;
  }
}

TEST(Bundle, RejectsBrokenManifests) {
  const auto dir = scratch_dir();
  EXPECT_THROW(load_bundle(dir), IoError);
  write_text(dir / "manifest.json", R"({"format": "other"})");
  EXPECT_THROW(load_bundle(dir), IoError);
  cmd_design(small_job(), dir / "b");
  fs::remove(dir / "b" / "mask_01.msk");
  EXPECT_THROW(load_bundle(dir / "b"), IoError);
}

TEST(Commands, DesignNeedsGateAndModes) {
  const auto dir = scratch_dir();
  const auto job = load_job_config(fs::path(MPLC_SOURCE_DIR) / "tests" / "data" / "no_gate.json");
  EXPECT_THROW(cmd_design(job, dir), ConfigError);
}

TEST(Commands, EvaluateWritesReportAndTables) {
  const auto dir = scratch_dir();
  cmd_design(small_job(), dir / "b");
  const auto c = cmd_evaluate(dir / "b", "mubs", dir / "eval");
  const json report = json::parse(read_text(dir / "eval" / "report.json"));
  EXPECT_DOUBLE_EQ(report.at("visibility").get<double>(), visibility(c));
  EXPECT_EQ(line_count(dir / "eval" / "crosstalk.csv"), 13);
  EXPECT_EQ(line_count(dir / "eval" / "crosstalk_raw.csv"), 13);

  cmd_evaluate(dir / "b", "computational", dir / "named" / "r.json");
  EXPECT_TRUE(fs::exists(dir / "named" / "r.json"));
  EXPECT_EQ(line_count(dir / "named" / "crosstalk.csv"), 4);
  EXPECT_THROW(cmd_evaluate(dir / "b", "random", dir / "x"), InvalidInput);
}

TEST(Commands, TomoIdealIsPerfect) {
  const auto dir = scratch_dir();
  cmd_design(small_job(), dir / "b");
  const auto ideal = cmd_tomo(dir / "b", dir / "ideal", true);
  EXPECT_NEAR(ideal.purity, 1.0, 1e-9);
  EXPECT_NEAR(ideal.fidelity, 1.0, 1e-9);
  const json metrics = json::parse(read_text(dir / "ideal" / "metrics.json"));
  EXPECT_EQ(metrics.at("ideal"), true);
  const json chi = json::parse(read_text(dir / "ideal" / "chi.json"));
  EXPECT_EQ(chi.at("re").size(), 9u);
  EXPECT_EQ(line_count(dir / "ideal" / "chi.csv"), 82);

  const auto device = cmd_tomo(dir / "b", dir / "device");
  EXPECT_LT(device.purity, 1.0);
  EXPECT_GT(device.capture, 0.0);
  EXPECT_LE(device.capture, 1.0);
}

TEST(Commands, SweepTables) {
  const auto dir = scratch_dir();
  const auto rows = cmd_sweep(small_job(), dir);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].d, 2);
  EXPECT_EQ(rows[0].n_planes, 1);
  EXPECT_EQ(rows[3].d, 3);
  EXPECT_EQ(rows[3].n_planes, 2);
  EXPECT_EQ(line_count(dir / "fig1b.csv"), 5);
  EXPECT_EQ(line_count(dir / "fig1c.csv"), 5);
  std::ifstream is(dir / "fig1b.csv");
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "d,n_planes,visibility,trace,capture");
  for (const auto& r : rows) {
    EXPECT_GT(r.visibility, 0.0);
    EXPECT_LE(r.visibility, 1.0 + 1e-12);
    EXPECT_LE(r.purity, 1.0 + 1e-9);
  }
  JobConfig no_sweep = small_job();
  no_sweep.sweep.reset();
  EXPECT_THROW(cmd_sweep(no_sweep, dir), ConfigError);
}

TEST(Commands, AlignAndExport) {
  const auto dir = scratch_dir();
  const auto job = small_job();
  cmd_design(job, dir / "b");
  const auto r = cmd_align(dir / "b", job.injected, job.ga, dir / "align");
  const json offsets = json::parse(read_text(dir / "align" / "offsets.json"));
  EXPECT_EQ(offsets.at("injected"), json::parse("[[1, 0], [0, 0]]"));
  EXPECT_EQ(offsets.at("recovered").size(), 2u);
  EXPECT_EQ(offsets.at("evaluations"), r.evaluations);
  EXPECT_EQ(line_count(dir / "align" / "ga_log.csv"), 4);

  cmd_export_masks(dir / "b", dir / "png");
  for (const char* f : {"mask_00.png", "mask_00.csv", "mask_01.png", "mask_01.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "png" / f)) << f;
  }
  EXPECT_EQ(read_text(dir / "png" / "mask_00.png"), read_text(dir / "b" / "mask_00.png"));
}

TEST(Probes, Names) {
  EXPECT_EQ(probe_states("mubs", 3).size(), 12u);
  EXPECT_EQ(probe_states("computational", 3).size(), 3u);
  EXPECT_THROW(probe_states("pauli", 2), InvalidInput);
}
