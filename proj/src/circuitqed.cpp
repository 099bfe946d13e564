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

#include "cqft/circuitqed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cqft/model.hpp"

namespace cqft {

void CircuitParams::validate() const {
  const std::pair<const char*, double> positive[] = {
      {"C_r", C_r},   {"L_r", L_r},   {"c_tl", c_tl}, {"l_tl", l_tl},
      {"line_length", line_length},   {"charge", charge}};
  for (const auto& [name, v] : positive) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("circuit parameter ") + name +
                                  " must be positive and finite");
    }
  }
  const std::pair<const char*, double> nonnegative[] = {
      {"C_c1", C_c1}, {"C_c2", C_c2}, {"C_gp", C_gp}, {"C_gm", C_gm},
      {"C_I", C_I},   {"C_p", C_p},   {"C_m", C_m},   {"E_Jp", E_Jp},
      {"E_Jm", E_Jm}};
  for (const auto& [name, v] : nonnegative) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("circuit parameter ") + name +
                                  " must be nonnegative and finite");
    }
  }
  if (!std::isfinite(V_gp) || !std::isfinite(V_gm)) {
    throw std::invalid_argument("circuit gate voltages must be finite");
  }
}

std::vector<std::pair<std::string, double>> DerivedParams::key_values() const {
  return {{"C_sigma_p", C_sigma_p}, {"C_sigma_m", C_sigma_m}, {"C_tl", C_tl},
          {"alpha_p", alpha_p},     {"alpha_m", alpha_m},     {"alpha_I", alpha_I},
          {"M", M},                 {"E_Cp", E_Cp},           {"E_Cm", E_Cm},
          {"E_I", E_I},             {"n_gp", n_gp},           {"n_gm", n_gm},
          {"beta_p", beta_p},       {"beta_m", beta_m},       {"lambda_p", lambda_p},
          {"lambda_m", lambda_m},   {"omega_r", omega_r}};
}

namespace {

double ratio_or_flag(double num, double den, double scale, const char* what,
                     std::vector<std::string>& warnings) {
  if (std::abs(den) <= 1e-12 * scale) {
    std::ostringstream os;
    os << "near-singular denominator in " << what << " (" << den << ")";
    warnings.push_back(os.str());
  }
  return num / den;
}

}  // namespace

DerivedParams derive_params(const CircuitParams& p) {
  p.validate();
  DerivedParams d;
  const double e = p.charge;
  d.C_sigma_p = p.C_c1 + p.C_gp + p.C_I + p.C_p;
  d.C_sigma_m = p.C_c1 + p.C_gm + p.C_I + p.C_m;
  d.C_tl = p.c_tl * p.line_length;
  const double c2tl = p.C_c2 + d.C_tl;
  d.alpha_p = c2tl * (p.C_c1 * p.C_c1 - p.C_c1 * d.C_sigma_p - p.C_r * d.C_sigma_p);
  d.alpha_m = c2tl * (p.C_c1 * p.C_c1 - p.C_c1 * d.C_sigma_m - p.C_r * d.C_sigma_m);
  d.alpha_I = c2tl * (p.C_c1 * p.C_I + p.C_c1 * p.C_r + p.C_I * p.C_r);
  d.M = d.alpha_p * (p.C_c2 * p.C_c2 / c2tl - p.C_c2 + p.C_c1 - d.C_sigma_m) -
        d.alpha_I * (p.C_I + p.C_c1) +
        p.C_c1 * c2tl * (p.C_r * d.C_sigma_p + p.C_c1 * p.C_I);
  if (d.M == 0.0 || !std::isfinite(d.M)) {
    throw DegenerateNetworkError("derive_params: singular capacitance network (M = 0)");
  }
  const double c_scale = std::max({p.C_r, d.C_sigma_p, d.C_sigma_m, c2tl});
  if (std::abs(d.M) < 1e-12 * c_scale * c_scale * c_scale * c_scale) {
    d.warnings.push_back("capacitance network close to singular (small M)");
  }

  const double den_p = d.alpha_m - p.C_c2 * d.C_tl * (p.C_c1 + p.C_r);
  d.E_Cp = e * e / (2.0 * d.M) * (p.C_c2 * d.C_tl * (p.C_c1 + p.C_r) - d.alpha_m);
  d.E_Cm = -e * e / (2.0 * d.M) * d.alpha_p;
  d.E_I = -e * e / d.M * d.alpha_I;

  const double a_scale = std::abs(c2tl) * c_scale * c_scale;
  const double q_gp = p.C_gp * p.V_gp;
  const double q_gm = p.C_gm * p.V_gm;
  d.n_gp = (q_gp + q_gm * ratio_or_flag(d.alpha_I, den_p, a_scale, "n_gp", d.warnings)) /
           (2.0 * e);
  // The second term of n_g- repeats C_g- V_g-, as in the closed form.
  d.n_gm = (q_gm + q_gm * ratio_or_flag(d.alpha_I, d.alpha_p, a_scale, "n_gm", d.warnings)) /
           (2.0 * e);

  d.beta_p = -(p.C_c1 * c2tl * (p.C_c1 + p.C_I - d.C_sigma_m) - p.C_c1 * p.C_c2 * d.C_tl) /
             d.M;
  d.beta_m = -(p.C_c1 * c2tl * (p.C_c1 + p.C_I - d.C_sigma_p)) / d.M;
  d.lambda_p = -(p.C_c2 * d.alpha_I) / (d.M * c2tl);
  d.lambda_m = -(p.C_c2 * d.alpha_p) / (d.M * c2tl);
  d.omega_r = 1.0 / std::sqrt(p.L_r * p.C_r);

  for (const auto& [name, v] : d.key_values()) {
    if (!std::isfinite(v)) {
      throw DegenerateNetworkError("derive_params: non-finite " + name);
    }
  }
  return d;
}

HardwareCouplings hardware_couplings(const CircuitParams& params,
                                     const DerivedParams& derived, double omega_r,
                                     const std::vector<double>& omega_k,
                                     const ChargeMatrixElements& m) {
  const double e = params.charge;
  HardwareCouplings out;
  out.resonator = 2.0 * e * params.C_r * std::sqrt(omega_r / (2.0 * params.C_r)) *
                  (derived.beta_p * m.plus + derived.beta_m * m.minus);
  const double weight = derived.lambda_p * m.plus + derived.lambda_m * m.minus;
  for (double w : omega_k) {
    if (!(w >= 0.0)) throw std::invalid_argument("hardware_couplings: omega_k < 0");
    out.line.push_back(2.0 * e * derived.C_tl *
                       std::sqrt(w / (4.0 * std::numbers::pi * params.c_tl)) * weight);
  }
  return out;
}

MatchResult match_couplings(const MatchRequest& r) {
  if (r.k.size() != r.lambda.size()) {
    throw std::invalid_argument("match_couplings: one target per k required");
  }
  if (!r.profile) throw std::invalid_argument("match_couplings: missing profile");
  MatchResult out;
  for (double xj : r.positions) {
    QubitMatch q;
    q.position = xj;
    for (std::size_t i = 0; i < r.k.size(); ++i) {
      const double omega = r.dispersion.boson_omega(r.k[i]);
      if (r.hardware == HardwareKind::FluxQubit && omega == 0.0) {
        throw DegenerateModeError("match_couplings: omega_k = 0 for a flux qubit");
      }
      const double integral = spatial_integral_symmetric(r.profile, r.k[i], xj, r.grid);
      const double required = r.lambda[i] * std::sqrt(omega) * integral;
      const double g = r.hardware == HardwareKind::Transmon ? std::sqrt(omega)
                                                            : 1.0 / std::sqrt(omega);
      const double beta = g == 0.0 ? 0.0 : required / g;
      q.required.push_back(required);
      q.beta.push_back(beta);
      const bool ok = std::abs(beta) <= r.beta_max && (g != 0.0 || required == 0.0);
      q.feasible.push_back(ok);
      out.all_feasible = out.all_feasible && ok;
    }
    if (!q.beta.empty()) {
      const auto [lo, hi] = std::minmax_element(q.beta.begin(), q.beta.end());
      double mean = 0.0;
      for (double b : q.beta) mean += std::abs(b);
      mean /= static_cast<double>(q.beta.size());
      q.ripple = mean > 0.0 ? (*hi - *lo) / mean : 0.0;
      q.constant_within_tolerance = q.ripple <= r.ripple_tolerance;
    }
    out.qubits.push_back(std::move(q));
  }
  return out;
}

}  // namespace cqft
