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

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqft/circuitqed.hpp"
#include "cqft/encoding.hpp"
#include "cqft/evolve.hpp"
#include "cqft/model.hpp"

namespace cqft {

/// Invalid configuration; the message names the line or the field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  SelfEnergy,
  PairCreation,
  TrotterConvergence,
  CouplingMatch,
  CircuitParams
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

enum class EvolutionMethod { Exact, Trotter, Both };

struct EvolutionSection {
  double t_start = 0.0;
  double t_end = 2.0;
  double substeps_per_unit = 200.0;
  double trotter_dt = 0.05;
  std::vector<double> dt_ladder = {0.1, 0.05, 0.025};
  double leakage_threshold = 1e-4;
  std::size_t samples = 40;
  EvolutionMethod method = EvolutionMethod::Both;
  Representation representation = Representation::Fermionic;
  bool use_ancilla = true;
  bool native_gates = false;
  std::vector<std::string> block_order = {"II", "Iz", "zI", "xx-yy", "yx+xy"};
  ExpmMethod expm = ExpmMethod::Krylov;
  std::size_t krylov_dim = 30;
  double krylov_tol = 1e-13;

  EvolutionConfig to_config() const;
};

struct CircuitSection {
  CircuitParams params;
  /// Resonator frequency for the coupling report; <= 0 uses 1/sqrt(L_r C_r).
  double omega_r = 0.0;
  /// Line frequencies in rad/s; empty uses the model band times frequency_unit.
  std::vector<double> omega_k;
  double frequency_unit = 2.0 * 3.14159265358979323846 * 1e9;
  double m_plus = 1.0;
  double m_minus = 1.0;
};

struct MatchSection {
  /// "packet": |lambda1(x, t)|^2 of the fermion packet; "gaussian":
  /// exp(-(x / width)^2).
  std::string profile = "packet";
  double width = 1.0;
  double time = 0.0;
  double beta_max = 1.0;
  double ripple_tolerance = 0.05;
};

struct OutputSection {
  std::string directory = "cqft-out";
};

struct RunConfig {
  Experiment experiment = Experiment::SelfEnergy;
  ModelParams model;
  EvolutionSection evolution;
  /// Encoded input state; defaults to vacuum for pair-creation, f otherwise.
  FermionState initial = FermionState::F;
  CircuitSection circuit;
  MatchSection match;
  OutputSection output;
};

/// Parses JSON text (comments allowed). Unknown keys and out-of-range values
/// raise ConfigError; every missing key takes its default.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Fully resolved configuration, defaults included.
nlohmann::json to_json(const RunConfig& config);

CircuitParams default_circuit_params();

}  // namespace cqft
