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

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqft/fields.hpp"

namespace cqft {

inline constexpr double kElementaryCharge = 1.602176634e-19;

/// Lumped elements of a two-island tunable transmon between a resonator and
/// an open line. SI units.
struct CircuitParams {
  double C_r = 0.0;
  double L_r = 0.0;
  double c_tl = 0.0;  // per unit length
  double l_tl = 0.0;  // per unit length
  double line_length = 0.0;
  double C_c1 = 0.0;
  double C_c2 = 0.0;
  double C_gp = 0.0;
  double C_gm = 0.0;
  double C_I = 0.0;
  double C_p = 0.0;
  double C_m = 0.0;
  double V_gp = 0.0;
  double V_gm = 0.0;
  double E_Jp = 0.0;
  double E_Jm = 0.0;
  double charge = kElementaryCharge;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct DerivedParams {
  double C_sigma_p = 0.0;
  double C_sigma_m = 0.0;
  double C_tl = 0.0;
  double alpha_p = 0.0;
  double alpha_m = 0.0;
  double alpha_I = 0.0;
  double M = 0.0;
  double E_Cp = 0.0;
  double E_Cm = 0.0;
  double E_I = 0.0;
  double n_gp = 0.0;
  double n_gm = 0.0;
  double beta_p = 0.0;
  double beta_m = 0.0;
  double lambda_p = 0.0;
  double lambda_m = 0.0;
  /// 1 / sqrt(L_r C_r)
  double omega_r = 0.0;
  std::vector<std::string> warnings;

  /// Flat (name, value) report in a fixed order.
  std::vector<std::pair<std::string, double>> key_values() const;
};

/// Raised when the capacitance network is singular (M = 0).
struct DegenerateNetworkError : std::domain_error {
  using std::domain_error::domain_error;
};

DerivedParams derive_params(const CircuitParams& params);

/// <0|n_+|1> and <0|n_-|1> of the truncated transmon.
struct ChargeMatrixElements {
  double plus = 1.0;
  double minus = 1.0;
};

struct HardwareCouplings {
  double resonator = 0.0;
  std::vector<double> line;  // one per omega_k
};

/// Resonator: 2e C_r sqrt(omega_r / 2C_r) (beta_+ m_+ + beta_- m_-).
/// Line: 2e C_tl sqrt(omega_k / 4 pi c_tl) (lambda_+ m_+ + lambda_- m_-).
HardwareCouplings hardware_couplings(const CircuitParams& params,
                                     const DerivedParams& derived, double omega_r,
                                     const std::vector<double>& omega_k,
                                     const ChargeMatrixElements& elements = {});

struct MatchRequest {
  std::vector<double> k;
  /// Target lambda_k, one per k.
  std::vector<double> lambda;
  std::vector<double> positions;
  /// Real spatial profile f(x), symmetric about every position.
  std::function<double(double)> profile;
  SpatialGrid grid;
  Dispersion dispersion;
  HardwareKind hardware = HardwareKind::Transmon;
  double beta_max = 1.0;
  double ripple_tolerance = 0.05;
};

struct QubitMatch {
  double position = 0.0;
  /// lambda_k sqrt(omega_k) int dx cos k(x - x_j) f(x)
  std::vector<double> required;
  /// required / g_k
  std::vector<double> beta;
  std::vector<bool> feasible;
  /// (max beta - min beta) / mean |beta|
  double ripple = 0.0;
  bool constant_within_tolerance = false;
};

struct MatchResult {
  std::vector<QubitMatch> qubits;
  bool all_feasible = true;
};

/// Solves beta_j g_k = lambda_k sqrt(omega_k) int dx cos k(x - x_j) f(x) per
/// mode, with g_k = sqrt(omega_k) (transmon) or 1/sqrt(omega_k) (flux qubit).
MatchResult match_couplings(const MatchRequest& request);

}  // namespace cqft
