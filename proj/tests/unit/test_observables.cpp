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

#include <sstream>

#include "cqft/observables.hpp"
#include "support.hpp"

using namespace cqft;
using namespace cqft::testing;

namespace {

Trajectory single(const StateVector& s, std::optional<FermionState> input) {
  Trajectory t;
  t.times = {0.0};
  t.states = {s};
  t.leakage = {truncation_leakage(s)};
  t.input = input;
  return t;
}

FieldModel model(double coupling) {
  ModelParams p;
  p.coupling = coupling;
  return FieldModel::from_params(p);
}

}  // namespace

TEST_CASE("observables: survival and pair probabilities of simple states") {
  const HilbertSpace space(2, {2, 2});
  const auto f = encode_state(FermionState::F, space).state;
  CHECK(survival_probability(single(f, FermionState::F), FermionState::F)[0] == 1.0);
  CHECK(pair_probability(single(f, FermionState::F))[0] == 0.0);
  const auto pair = encode_state(FermionState::Pair, space).state;
  CHECK(pair_probability(single(pair, FermionState::Pair))[0] == 1.0);
  CHECK(pair_probability_boson_vacuum(single(pair, FermionState::Pair))[0] == 1.0);
  // (|f> + |pair, one photon>) / sqrt(2)
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  const std::vector<int> q_pair{1, 1};
  const std::vector<int> one{1, 0};
  amp(static_cast<Eigen::Index>(encoded_index(FermionState::F, space))) = 1.0 / std::sqrt(2.0);
  amp(static_cast<Eigen::Index>(space.encode(q_pair, one))) = kI / std::sqrt(2.0);
  const StateVector mix(space, amp);
  const auto t = single(mix, FermionState::F);
  CHECK(survival_probability(t, FermionState::F)[0] == doctest::Approx(0.5));
  CHECK(pair_probability(t)[0] == doctest::Approx(0.5));
  CHECK(pair_probability_boson_vacuum(t)[0] == 0.0);
  const auto sectors = sector_probabilities(mix);
  CHECK(sectors[1] == doctest::Approx(0.5));
  CHECK(sectors[3] == doctest::Approx(0.5));
  CHECK(boson_spectrum(mix).mean[0] == doctest::Approx(0.5));
}

TEST_CASE("observables: survival needs the matching input label") {
  const HilbertSpace space(2, {1});
  const auto f = encode_state(FermionState::F, space).state;
  CHECK_THROWS_AS(survival_probability(single(f, FermionState::F), FermionState::Vacuum),
                  std::invalid_argument);
  CHECK_THROWS_AS(survival_probability(single(f, std::nullopt), FermionState::F),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_series(single(f, std::nullopt)), std::invalid_argument);
}

TEST_CASE("observables: boson spectra") {
  const HilbertSpace space(2, {6, 3});
  const auto vac = encode_state(FermionState::Vacuum, space).state;
  CHECK(boson_spectrum(vac).mean == std::vector<double>{0.0, 0.0});
  // Displaced vacuum in mode 0: <n> = |alpha|^2, <n^2> = |alpha|^4 + |alpha|^2.
  const HilbertSpace big(2, {30, 1});
  const cplx alpha(0.6, 0.2);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(big.dim()));
  double fact = 1.0;
  for (int n = 0; n <= 30; ++n) {
    if (n > 0) fact *= n;
    const std::vector<int> q{0, 0};
    const std::vector<int> occ{n, 0};
    amp(static_cast<Eigen::Index>(big.encode(q, occ))) =
        std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(fact);
  }
  const StateVector coherent(big, amp);
  const double a2 = std::norm(alpha);
  const auto s = boson_spectrum(coherent);
  CHECK(s.mean[0] == doctest::Approx(a2).epsilon(1e-12));
  CHECK(s.second_moment[0] == doctest::Approx(a2 * a2 + a2).epsilon(1e-12));
  const StateVector r(space, random_state(static_cast<Eigen::Index>(space.dim())));
  const auto direct = boson_spectrum(r);
  const auto viaop = boson_spectrum_operator(r);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(direct.mean[k] == doctest::Approx(viaop.mean[k]).epsilon(1e-12));
    CHECK(direct.second_moment[k] == doctest::Approx(viaop.second_moment[k]).epsilon(1e-12));
    // Cauchy-Schwarz
    CHECK(direct.mean[k] * direct.mean[k] <= direct.second_moment[k] + 1e-14);
  }
}

TEST_CASE("observables: sector probabilities sum to one and ignore global phase") {
  const HilbertSpace space(3, {2, 2});
  for (int i = 0; i < 5; ++i) {
    const StateVector s(space, random_state(static_cast<Eigen::Index>(space.dim())));
    const auto p = sector_probabilities(s);
    CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-14));
    const StateVector rotated(space, std::polar(1.0, 0.77) * s.amplitudes());
    const auto q = sector_probabilities(rotated);
    for (std::size_t j = 0; j < 4; ++j) CHECK(q[j] == doctest::Approx(p[j]).epsilon(1e-14));
    CHECK(encoded_overlap(rotated, FermionState::FBar) ==
          doctest::Approx(encoded_overlap(s, FermionState::FBar)).epsilon(1e-14));
  }
}

TEST_CASE("observables: CSV layout") {
  const auto m = model(0.3);
  const auto space = m.space(true);
  const auto psi = encode_state(FermionState::F, space).state;
  EvolutionConfig c;
  c.t_end = 0.5;
  c.samples = 5;
  const auto series = make_series(exact_evolve(m, psi, c, FermionState::F));
  std::ostringstream out;
  write_csv(out, series, m.boson_grid().points());
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "time,P_f,P_pair,P_vac,leakage,n_k=0.83333333333333326,n_k=1.5,n_k=2.1666666666666665");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
  }
  CHECK(rows == series.times.size());
  CHECK(series.times.size() == 6);
  for (double v : series.sector_sum) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("observables: weak-coupling dynamics follow second-order perturbation theory") {
  const auto m = model(0.5);
  const double t_end = 2.0;
  const auto space = m.space(false);
  EvolutionConfig c;
  c.t_end = t_end;
  c.substeps_per_unit = 400.0;
  c.samples = 1;

  const auto f = encode_state(FermionState::F, space).state;
  const auto tf = exact_evolve(m, f, c, FermionState::F);
  const double dep_f = 1.0 - survival_probability(tf, FermionState::F).back();
  const auto df = dyson_second_order(m, FermionState::F, 0.0, t_end);
  CHECK(dep_f <= 0.05);
  CHECK(dep_f > 1e-4);
  CHECK(std::abs(df.depletion - dep_f) < 0.1 * dep_f);
  CHECK(std::abs(df.depletion_first_order - dep_f) < 0.1 * dep_f);

  const auto vac = encode_state(FermionState::Vacuum, space).state;
  const auto tv = exact_evolve(m, vac, c, FermionState::Vacuum);
  const double dep_v = 1.0 - survival_probability(tv, FermionState::Vacuum).back();
  const double pair = pair_probability(tv).back();
  const auto dv = dyson_second_order(m, FermionState::Vacuum, 0.0, t_end);
  CHECK(pair > 1e-6);
  CHECK(std::abs(dv.pair - pair) < 0.1 * pair);
  CHECK(std::abs(dv.depletion - dep_v) < 0.1 * dep_v);
  CHECK_THROWS_AS(dyson_second_order(m, FermionState::F, 1.0, 0.0), std::invalid_argument);
}
