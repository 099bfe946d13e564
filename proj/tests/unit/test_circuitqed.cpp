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

#include <doctest.h>

#include <numbers>

#include "cqft/circuitqed.hpp"
#include "cqft/config.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cqft;
using namespace cqft::testing;

namespace {

CircuitParams random_params() {
  CircuitParams p = default_circuit_params();
  auto jitter = [](double v) { return v * uniform(0.5, 2.0); };
  p.C_r = jitter(p.C_r);
  p.c_tl = jitter(p.c_tl);
  p.line_length = jitter(p.line_length);
  p.C_c1 = jitter(p.C_c1);
  p.C_c2 = jitter(p.C_c2);
  p.C_gp = jitter(p.C_gp);
  p.C_gm = jitter(p.C_gm);
  p.C_I = jitter(p.C_I);
  p.C_p = jitter(p.C_p);
  p.C_m = jitter(p.C_m);
  p.V_gp = uniform(-1.0, 1.0);
  p.V_gm = uniform(-1.0, 1.0);
  return p;
}

void check_close(double got, long double want, double rel) {
  CHECK(std::abs(static_cast<long double>(got) - want) <=
        static_cast<long double>(rel) * std::abs(want));
}

MatchRequest match_request(HardwareKind kind) {
  MatchRequest r;
  for (int i = 0; i < 8; ++i) r.k.push_back(0.5 + 0.25 * i);
  r.positions = {0.0, 1.5};
  r.grid = SpatialGrid::uniform(-30.0, 30.0, 6001);
  r.hardware = kind;
  return r;
}

}  // namespace

TEST_CASE("circuitqed: default parameters are valid") {
  const auto p = default_circuit_params();
  CHECK_NOTHROW(p.validate());
  const auto d = derive_params(p);
  CHECK(d.warnings.empty());
  CHECK(d.omega_r == doctest::Approx(1.0 / std::sqrt(p.C_r * p.L_r)));
  CHECK(d.key_values().size() == 17);
}

TEST_CASE("circuitqed: decoupling limits are exact zeros") {
  auto p = default_circuit_params();
  p.C_c1 = 0.0;
  const auto d1 = derive_params(p);
  CHECK(d1.beta_p == 0.0);
  CHECK(d1.beta_m == 0.0);
  const auto h1 = hardware_couplings(p, d1, d1.omega_r, {1e10});
  CHECK(h1.resonator == 0.0);
  auto q = default_circuit_params();
  q.C_c2 = 0.0;
  const auto d2 = derive_params(q);
  CHECK(d2.lambda_p == 0.0);
  CHECK(d2.lambda_m == 0.0);
  const auto h2 = hardware_couplings(q, d2, d2.omega_r, {1e10, 2e10});
  CHECK(h2.line == std::vector<double>{0.0, 0.0});
}

TEST_CASE("circuitqed: charging energies scale inversely with capacitance") {
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = random_params();
    const double s = uniform(1.5, 4.0);
    auto q = p;
    for (double* c : {&q.C_r, &q.c_tl, &q.C_c1, &q.C_c2, &q.C_gp, &q.C_gm, &q.C_I, &q.C_p,
                      &q.C_m}) {
      *c *= s;
    }
    const auto a = derive_params(p);
    const auto b = derive_params(q);
    CHECK(std::abs(b.E_Cp * s - a.E_Cp) <= 1e-12 * std::abs(a.E_Cp));
    CHECK(std::abs(b.E_Cm * s - a.E_Cm) <= 1e-12 * std::abs(a.E_Cm));
    CHECK(std::abs(b.E_I * s - a.E_I) <= 1e-12 * std::abs(a.E_I));
  }
}

TEST_CASE("circuitqed: formulas agree with an independent evaluation") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_params();
    const auto d = derive_params(p);
    const auto r = circuit_reference(p);
    check_close(d.M, r.M, 1e-12);
    check_close(d.E_Cp, r.E_Cp, 1e-12);
    check_close(d.E_Cm, r.E_Cm, 1e-12);
    check_close(d.E_I, r.E_I, 1e-12);
    check_close(d.n_gp, r.n_gp, 1e-12);
    check_close(d.n_gm, r.n_gm, 1e-12);
    check_close(d.beta_p, r.beta_p, 1e-12);
    check_close(d.beta_m, r.beta_m, 1e-12);
    check_close(d.lambda_p, r.lambda_p, 1e-12);
    check_close(d.lambda_m, r.lambda_m, 1e-12);
  }
}

TEST_CASE("circuitqed: derived parameters vary continuously") {
  const auto p = default_circuit_params();
  const auto base = derive_params(p);
  const double eps = 0.01;
  for (double CircuitParams::*field :
       {&CircuitParams::C_r, &CircuitParams::C_c1, &CircuitParams::C_c2,
        &CircuitParams::C_gp, &CircuitParams::C_gm, &CircuitParams::C_I,
        &CircuitParams::C_p, &CircuitParams::C_m, &CircuitParams::c_tl}) {
    auto q = p;
    q.*field *= 1.0 + eps;
    const auto d = derive_params(q);
    const auto a = base.key_values();
    const auto b = d.key_values();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].second == 0.0) continue;
      CHECK(std::abs(b[i].second - a[i].second) <= 10.0 * eps * std::abs(a[i].second));
    }
  }
}

TEST_CASE("circuitqed: singular network raises") {
  // M is a sum of positive products of capacitances; it vanishes once the
  // island carries no capacitance and one coupling capacitor is absent.
  auto p = default_circuit_params();
  p.C_gp = p.C_gm = p.C_I = p.C_p = p.C_m = 0.0;
  CHECK(circuit_reference(p).M > 0.0L);
  CHECK_NOTHROW(derive_params(p));
  p.C_c1 = 0.0;
  CHECK(circuit_reference(p).M == 0.0L);
  CHECK_THROWS_AS(derive_params(p), DegenerateNetworkError);
  auto q = default_circuit_params();
  q.C_gp = q.C_gm = q.C_I = q.C_p = q.C_m = 0.0;
  q.C_c2 = 0.0;
  CHECK_THROWS_AS(derive_params(q), DegenerateNetworkError);
}

TEST_CASE("circuitqed: parameter validation") {
  auto p = default_circuit_params();
  p.C_I = -1e-15;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_circuit_params();
  p.C_r = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_circuit_params();
  p.C_c1 = -1e-15;
  CHECK_THROWS_AS(derive_params(p), std::invalid_argument);
}

TEST_CASE("circuitqed: hardware coupling scalings") {
  const auto p = default_circuit_params();
  const auto d = derive_params(p);
  const auto h = hardware_couplings(p, d, d.omega_r, {2e10, 4e10});
  CHECK(h.line[1] / h.line[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const auto zero = hardware_couplings(p, d, d.omega_r, {2e10}, {0.0, 0.0});
  CHECK(zero.resonator == 0.0);
  CHECK(zero.line[0] == 0.0);
  // Hand-written ratio of line to resonator coupling at one point.
  const double wk = 3e10;
  const double wr = 4e10;
  const auto g = hardware_couplings(p, d, wr, {wk}, {0.8, 1.1});
  const double e = p.charge;
  const double res = 2 * e * p.C_r * std::sqrt(wr / (2 * p.C_r)) * (0.8 * d.beta_p + 1.1 * d.beta_m);
  const double line = 2 * e * p.c_tl * p.line_length *
                      std::sqrt(wk / (4 * std::numbers::pi * p.c_tl)) *
                      (0.8 * d.lambda_p + 1.1 * d.lambda_m);
  CHECK(g.line[0] / g.resonator == doctest::Approx(line / res).epsilon(1e-13));
  CHECK_THROWS_AS(hardware_couplings(p, d, wr, {-1.0}), std::invalid_argument);
}

TEST_CASE("circuitqed: constant targets give a single feasible beta") {
  auto r = match_request(HardwareKind::Transmon);
  r.positions = {0.0};
  // A narrow bump makes the spatial integral k-independent.
  const double w = 0.01;
  r.grid = SpatialGrid::uniform(-1.0, 1.0, 20001);
  r.profile = [w](double x) {
    return std::exp(-(x / w) * (x / w)) / (w * std::sqrt(std::numbers::pi));
  };
  r.lambda.assign(r.k.size(), 0.2);
  const auto m = match_couplings(r);
  REQUIRE(m.qubits.size() == 1);
  CHECK(m.all_feasible);
  CHECK(m.qubits[0].ripple < 1e-3);
  CHECK(m.qubits[0].constant_within_tolerance);
  for (double b : m.qubits[0].beta) CHECK(b == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("circuitqed: targets above beta_max are flagged") {
  auto r = match_request(HardwareKind::Transmon);
  r.positions = {0.0};
  const double w = 0.01;
  r.grid = SpatialGrid::uniform(-1.0, 1.0, 20001);
  r.profile = [w](double x) {
    return std::exp(-(x / w) * (x / w)) / (w * std::sqrt(std::numbers::pi));
  };
  for (std::size_t i = 0; i < r.k.size(); ++i) r.lambda.push_back(i < 4 ? 0.5 : 2.0);
  const auto m = match_couplings(r);
  CHECK_FALSE(m.all_feasible);
  for (std::size_t i = 0; i < r.k.size(); ++i) CHECK(m.qubits[0].feasible[i] == (i < 4));
}

TEST_CASE("circuitqed: flux qubits realize a 1/sqrt(omega) profile, transmons do not") {
  auto base = match_request(HardwareKind::Transmon);
  const double w = 0.01;
  base.positions = {0.0};
  base.grid = SpatialGrid::uniform(-1.0, 1.0, 20001);
  base.profile = [w](double x) {
    return std::exp(-(x / w) * (x / w)) / (w * std::sqrt(std::numbers::pi));
  };
  // lambda_k sqrt(omega_k) ~ 1 / sqrt(omega_k)
  for (double k : base.k) base.lambda.push_back(0.3 / k);
  auto flux = base;
  flux.hardware = HardwareKind::FluxQubit;
  const auto mt = match_couplings(base);
  const auto mf = match_couplings(flux);
  CHECK(mf.qubits[0].constant_within_tolerance);
  CHECK(mf.qubits[0].ripple < 1e-3);
  CHECK_FALSE(mt.qubits[0].constant_within_tolerance);
  CHECK(mt.qubits[0].ripple > base.ripple_tolerance);
}

TEST_CASE("circuitqed: match requires consistent inputs") {
  auto r = match_request(HardwareKind::Transmon);
  r.profile = [](double x) { return std::exp(-x * x); };
  r.lambda = {1.0};
  CHECK_THROWS_AS(match_couplings(r), std::invalid_argument);
  r.lambda.assign(r.k.size(), 0.1);
  r.positions = {0.3};
  CHECK_THROWS_AS(match_couplings(r), std::domain_error);
}
