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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cqft/encoding.hpp"
#include "cqft/gates.hpp"
#include "cqft/hilbert.hpp"
#include "cqft/model.hpp"

namespace cqft {

struct EvolutionConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  /// Exact propagator substeps per unit time.
  double substeps_per_unit = 100.0;
  double trotter_dt = 0.05;
  /// Top-Fock-level population that triggers a truncation warning.
  double leakage_threshold = 1e-4;
  /// Number of recorded intervals; 0 records every step.
  std::size_t samples = 0;
  Representation representation = Representation::Fermionic;
  TrotterOptions trotter;
  ExpmOptions expm{.method = ExpmMethod::Krylov};

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  /// Label of the encoded input, when the run started from one.
  std::optional<FermionState> input;
  std::vector<double> leakage;
  double max_leakage = 0.0;
  double max_norm_error = 0.0;
  std::vector<std::string> warnings;

  const StateVector& final_state() const { return states.back(); }
};

/// Population of basis states with any mode at its top Fock level.
double truncation_leakage(const StateVector& state);

/// Piecewise-constant midpoint propagator exp(-i dt [H_free + H_int(t_mid)]).
Trajectory exact_evolve(const FieldModel& model, const StateVector& initial,
                        const EvolutionConfig& config,
                        std::optional<FermionState> input = std::nullopt);

/// Sequential application of compiled Trotter steps. Uses the ancilla when the
/// state carries a third qubit and config.trotter.use_ancilla is set.
Trajectory trotter_evolve(const FieldModel& model, const StateVector& initial,
                          const EvolutionConfig& config,
                          std::optional<FermionState> input = std::nullopt);

/// 1 - |<a|b>|^2
double infidelity(const StateVector& a, const StateVector& b);

struct ErrorRow {
  double dt = 0.0;
  double infidelity = 0.0;
  /// sqrt(infidelity), the quantity the order is fitted on.
  double distance = 0.0;
  /// Largest deviation among the sector probabilities and boson means.
  double max_observable_deviation = 0.0;
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
  /// Slope of log(distance) against log(dt).
  double fitted_order = 0.0;
  /// Exact reference recomputed with the other exponential backend.
  double control_infidelity = 0.0;
  double reference_dt = 0.0;
  bool monotone = true;
};

/// Runs trotter_evolve for every dt of the ladder against one exact reference
/// at min(dt)/8 and fits the convergence order.
ErrorReport trotter_error_report(const FieldModel& model, const StateVector& initial,
                                 const EvolutionConfig& config,
                                 const std::vector<double>& dt_ladder);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cqft
