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

#include <array>
#include <cstddef>
#include <ostream>
#include <vector>

#include "cqft/encoding.hpp"
#include "cqft/evolve.hpp"
#include "cqft/hilbert.hpp"
#include "cqft/model.hpp"

namespace cqft {

/// Probabilities of the four system-qubit sectors, indexed by FermionState
/// (vacuum, f, fbar, pair), with every other qubit and the bosons traced out.
std::array<double, 4> sector_probabilities(const StateVector& state);

/// |<label, other qubits up, boson vacuum | state>|^2
double encoded_overlap(const StateVector& state, FermionState label);

struct BosonSpectrum {
  std::vector<double> mean;
  std::vector<double> second_moment;
};

/// <n_k> and <n_k^2> for every mode, read off the basis amplitudes.
BosonSpectrum boson_spectrum(const StateVector& state);
/// Same through sparse number operators.
BosonSpectrum boson_spectrum_operator(const StateVector& state);

/// |<input|psi(t)>|^2 per sample; throws when the trajectory started from a
/// different encoded state.
std::vector<double> survival_probability(const Trajectory& trajectory,
                                         FermionState input);
/// Pair-sector probability with the bosons traced out.
std::vector<double> pair_probability(const Trajectory& trajectory);
/// Pair sector with every boson mode in the vacuum.
std::vector<double> pair_probability_boson_vacuum(const Trajectory& trajectory);

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> survival;
  std::vector<double> pair;
  std::vector<double> vacuum;
  std::vector<double> leakage;
  std::vector<std::vector<double>> occupation;  // [sample][mode]
  std::vector<double> sector_sum;
};

/// Series of a trajectory started from an encoded state.
ObservableSeries make_series(const Trajectory& trajectory);

/// time, P_f, P_pair, P_vac, leakage, n_k...; 17 significant digits.
void write_csv(std::ostream& out, const ObservableSeries& series,
               const std::vector<double>& k_values);

struct DysonEstimate {
  /// 1 - |<i|U|i>|^2 from the second-order diagonal amplitude.
  double depletion = 0.0;
  /// Same quantity from the first-order amplitudes, sum_n |A_n|^2.
  double depletion_first_order = 0.0;
  /// First-order pair-sector probability.
  double pair = 0.0;
};

/// Time-dependent perturbation theory on the assembled H_int(t) of the model:
/// A_n = -i int e^{i(E_n-E_i)t} <n|H_int(t)|i> dt and the second-order
/// diagonal amplitude by nested trapezoid quadrature.
DysonEstimate dyson_second_order(const FieldModel& model, FermionState input,
                                 double t_start, double t_end,
                                 std::size_t n_quadrature = 2000);

}  // namespace cqft
