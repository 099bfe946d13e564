// Copyright 2026 The cqft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cqft/config.hpp"
#include "cqft/hilbert.hpp"
#include "cqft/run.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cqft: fermion-boson scattering on a simulated circuit-QED device"};
  std::string config_path;
  std::string output_dir;
  int verbosity = 0;
  unsigned jobs = 1;
  app.add_option("-c,--config", config_path, "Experiment config (JSON, comments allowed)")
      ->required();
  app.add_option("-o,--output-dir", output_dir, "Overrides output.directory");
  app.add_flag("-v,--verbose", verbosity, "Print progress (repeat for more)");
  app.add_option("-j,--jobs", jobs, "Parallel evolutions")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", cqft::version());
  CLI11_PARSE(app, argc, argv);

  try {
    const cqft::RunConfig config = cqft::load_config(config_path);
    const std::string dir = output_dir.empty() ? config.output.directory : output_dir;
    cqft::RunOptions options;
    options.verbosity = verbosity;
    options.jobs = jobs;
    options.log = &std::cerr;
    const auto result = cqft::run(config, dir, options);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (verbosity > 0) {
      for (const auto& f : result.files) std::cerr << "wrote " << dir << "/" << f << "\n";
    }
    return kOk;
  } catch (const cqft::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const cqft::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
