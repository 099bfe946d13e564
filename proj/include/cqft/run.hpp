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

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqft/config.hpp"

namespace cqft {

std::string version();

struct RunOptions {
  int verbosity = 0;
  unsigned jobs = 1;
  /// Progress messages go here when verbosity > 0.
  std::ostream* log = nullptr;
};

struct RunResult {
  nlohmann::json manifest;
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

/// Runs one experiment and writes its files plus manifest.json into
/// output_dir. Throws ConfigError for inconsistent settings and
/// NumericalError when a state stops being finite.
RunResult run(const RunConfig& config, const std::filesystem::path& output_dir,
              const RunOptions& options = {});

}  // namespace cqft
