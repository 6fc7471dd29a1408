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

// mplc command-line driver.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "mplc/config.hpp"
#include "mplc/parallel.hpp"
#include "mplc/pipeline.hpp"

namespace {

mplc::MisalignmentSpec parse_inject(const std::string& text) {
  // "dx,dy;dx,dy;..."
  mplc::MisalignmentSpec spec;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) throw mplc::InvalidInput("--inject: expected dx,dy pairs separated by ';'");
    spec.offsets.emplace_back(std::stoi(pair.substr(0, comma)), std::stoi(pair.substr(comma + 1)));
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-plane light conversion design and verification"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: $MPLC_THREADS or 1)")->check(CLI::PositiveNumber);

  std::string config, design, out, probes = "mubs", inject;
  std::uint64_t seed = 0;
  bool ideal = false;

  auto* design_cmd = app.add_subcommand("design", "Optimize masks and write a design bundle");
  design_cmd->add_option("--config", config, "Job config (JSON)")->required()->check(CLI::ExistingFile);
  design_cmd->add_option("--out", out, "Bundle directory")->required();
  design_cmd->add_option("--seed", seed, "Override the config seed");

  auto* eval_cmd = app.add_subcommand("evaluate", "Crosstalk matrix and visibility of a design");
  eval_cmd->add_option("--design", design, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--probes", probes, "mubs or computational")
      ->check(CLI::IsMember({"mubs", "computational"}));
  eval_cmd->add_option("--out", out, "report.json path or output directory")->required();

  auto* tomo_cmd = app.add_subcommand("tomo", "Process tomography of a design");
  tomo_cmd->add_option("--design", design, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  tomo_cmd->add_option("--out", out, "chi.json path or output directory")->required();
  tomo_cmd->add_flag("--ideal", ideal, "Use the analytic gate instead of the simulated device");

  auto* sweep_cmd = app.add_subcommand("sweep", "Visibility and purity against plane count");
  sweep_cmd->add_option("--config", config, "Job config with a sweep section")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", out, "Output directory")->required();

  auto* align_cmd = app.add_subcommand("align", "Genetic search for mask offsets");
  align_cmd->add_option("--design", design, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  align_cmd->add_option("--config", config, "Job config with ga/align sections")->check(CLI::ExistingFile);
  align_cmd->add_option("--inject", inject, "Injected offsets \"dx,dy;dx,dy;...\" (overrides config)");
  align_cmd->add_option("--seed", seed, "Override the config seed");
  std::string align_probes = "computational";
  align_cmd->add_option("--probes", align_probes, "Fitness probes: computational or mubs")
      ->check(CLI::IsMember({"mubs", "computational"}));
  align_cmd->add_option("--out", out, "offsets.json path or output directory")->required();

  auto* export_cmd = app.add_subcommand("export-masks", "Write PNG and CSV copies of the masks");
  export_cmd->add_option("--design", design, "Bundle directory")->required()->check(CLI::ExistingDirectory);
  export_cmd->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) mplc::set_num_threads(threads);

  try {
    if (*design_cmd) {
      auto job = mplc::load_job_config(config);
      if (design_cmd->count("--seed")) job.seed = job.ga.seed = seed;
      const auto bundle = mplc::cmd_design(job, out);
      std::cout << "iterations " << bundle.trace.values.size() << " trace " << bundle.trace.final_value() << '\n';
    } else if (*eval_cmd) {
      const auto c = mplc::cmd_evaluate(design, probes, out);
      std::cout << "visibility " << mplc::visibility(c) << " accuracy " << mplc::accuracy(c) << '\n';
    } else if (*tomo_cmd) {
      const auto r = mplc::cmd_tomo(design, out, ideal);
      std::cout << "purity " << r.purity << " fidelity " << r.fidelity << '\n';
    } else if (*sweep_cmd) {
      const auto rows = mplc::cmd_sweep(mplc::load_job_config(config), out);
      for (const auto& r : rows) {
        std::cout << "d=" << r.d << " planes=" << r.n_planes << " visibility " << r.visibility << " purity "
                  << r.purity << '\n';
      }
    } else if (*align_cmd) {
      mplc::GaParams params;
      mplc::MisalignmentSpec injected;
      if (!config.empty()) {
        const auto job = mplc::load_job_config(config);
        params = job.ga;
        injected = job.injected;
      }
      if (align_cmd->count("--seed")) params.seed = seed;
      if (!inject.empty()) injected = parse_inject(inject);
      const auto r = mplc::cmd_align(design, injected, params, out, align_probes);
      std::cout << "best_fitness " << r.best_fitness << " evaluations " << r.evaluations << '\n';
    } else if (*export_cmd) {
      mplc::cmd_export_masks(design, out);
    }
  } catch (const mplc::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const mplc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
