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

#include "cqft/observables.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace cqft {

namespace {

std::size_t sector_of(const HilbertSpace& space, std::size_t index) {
  const int q0 = space.qubit_bit(index, 0);
  const int q1 = space.qubit_bit(index, 1);
  // |up up> vacuum, |up down> f, |down up> fbar, |down down> pair.
  return static_cast<std::size_t>(2 * q0 + q1);
}

constexpr std::size_t sector_slot(FermionState s) {
  switch (s) {
    case FermionState::Vacuum: return 0;
    case FermionState::F: return 1;
    case FermionState::FBar: return 2;
    case FermionState::Pair: return 3;
  }
  return 0;
}

bool is_boson_vacuum(const HilbertSpace& space, std::size_t index) {
  return index % space.boson_dim() == 0;
}

}  // namespace

std::array<double, 4> sector_probabilities(const StateVector& state) {
  const auto& space = state.space();
  if (space.n_qubits() < 2) {
    throw std::invalid_argument("sector_probabilities: need two system qubits");
  }
  std::array<double, 4> p{};
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < space.dim(); ++i) {
    p[sector_of(space, i)] += std::norm(a(static_cast<Eigen::Index>(i)));
  }
  return p;
}

double encoded_overlap(const StateVector& state, FermionState label) {
  const auto i = encoded_index(label, state.space());
  return std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
}

BosonSpectrum boson_spectrum(const StateVector& state) {
  const auto& space = state.space();
  BosonSpectrum out{std::vector<double>(space.n_modes(), 0.0),
                    std::vector<double>(space.n_modes(), 0.0)};
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const double p = std::norm(a(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
      const double n = space.occupation(i, k);
      out.mean[k] += n * p;
      out.second_moment[k] += n * n * p;
    }
  }
  return out;
}

BosonSpectrum boson_spectrum_operator(const StateVector& state) {
  const auto& space = state.space();
  BosonSpectrum out;
  for (std::size_t k = 0; k < space.n_modes(); ++k) {
    const auto n = boson_op(space, k, BosonKind::Number);
    const StateVector nv = apply(n, state);
    out.mean.push_back(state.inner(nv).real());
    out.second_moment.push_back(nv.inner(nv).real());
  }
  return out;
}

std::vector<double> survival_probability(const Trajectory& trajectory,
                                         FermionState input) {
  if (!trajectory.input.has_value()) {
    throw std::invalid_argument("survival_probability: trajectory has no input label");
  }
  if (*trajectory.input != input) {
    throw std::invalid_argument("survival_probability: trajectory started from '" +
                                to_string(*trajectory.input) + "', not '" +
                                to_string(input) + "'");
  }
  std::vector<double> out;
  out.reserve(trajectory.states.size());
  for (const auto& s : trajectory.states) out.push_back(encoded_overlap(s, input));
  return out;
}

std::vector<double> pair_probability(const Trajectory& trajectory) {
  std::vector<double> out;
  out.reserve(trajectory.states.size());
  for (const auto& s : trajectory.states) {
    out.push_back(sector_probabilities(s)[sector_slot(FermionState::Pair)]);
  }
  return out;
}

std::vector<double> pair_probability_boson_vacuum(const Trajectory& trajectory) {
  std::vector<double> out;
  for (const auto& s : trajectory.states) {
    const auto& space = s.space();
    double p = 0.0;
    for (std::size_t i = 0; i < space.dim(); i += space.boson_dim()) {
      if (sector_of(space, i) == sector_slot(FermionState::Pair) &&
          is_boson_vacuum(space, i)) {
        p += std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
      }
    }
    out.push_back(p);
  }
  return out;
}

ObservableSeries make_series(const Trajectory& trajectory) {
  if (!trajectory.input.has_value()) {
    throw std::invalid_argument("make_series: trajectory has no input label");
  }
  ObservableSeries out;
  out.times = trajectory.times;
  out.survival = survival_probability(trajectory, *trajectory.input);
  out.pair = pair_probability(trajectory);
  out.leakage = trajectory.leakage;
  for (const auto& s : trajectory.states) {
    out.vacuum.push_back(encoded_overlap(s, FermionState::Vacuum));
    out.occupation.push_back(boson_spectrum(s).mean);
    const auto p = sector_probabilities(s);
    out.sector_sum.push_back(p[0] + p[1] + p[2] + p[3]);
  }
  return out;
}

void write_csv(std::ostream& out, const ObservableSeries& series,
               const std::vector<double>& k_values) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  out << "time,P_f,P_pair,P_vac,leakage";
  for (double k : k_values) out << ",n_k=" << k;
  out << "\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << series.times[i] << "," << series.survival[i] << "," << series.pair[i]
        << "," << series.vacuum[i] << "," << series.leakage[i];
    const auto& occ = series.occupation[i];
    if (occ.size() < k_values.size()) {
      throw std::invalid_argument("write_csv: fewer occupations than k values");
    }
    for (std::size_t k = 0; k < k_values.size(); ++k) out << "," << occ[k];
    out << "\n";
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

DysonEstimate dyson_second_order(const FieldModel& model, FermionState input,
                                 double t_start, double t_end,
                                 std::size_t n_quadrature) {
  if (n_quadrature < 2 || !(t_end > t_start)) {
    throw std::invalid_argument("dyson_second_order: bad quadrature setup");
  }
  const HilbertSpace space = model.space(false);
  const auto dim = static_cast<Eigen::Index>(space.dim());
  const auto i0 = static_cast<Eigen::Index>(encoded_index(input, space));

  Eigen::VectorXd energy(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    double e = 0.0;
    for (std::size_t k = 0; k < model.n_modes(); ++k) {
      e += model.omega(k) * space.occupation(static_cast<std::size_t>(n), k);
    }
    energy(n) = e;
  }

  // g_n(t) = e^{i(E_n - E_i)t} <n|H_int(t)|i>, one column per time sample.
  const std::size_t nt = n_quadrature;
  const double h = (t_end - t_start) / static_cast<double>(nt - 1);
  CMatrix g(dim, static_cast<Eigen::Index>(nt));
  for (std::size_t j = 0; j < nt; ++j) {
    const double t = t_start + h * static_cast<double>(j);
    const SparseOperator hint = build_h_int(model, t, space);
    const CVector column = hint.matrix().col(i0);
    for (Eigen::Index n = 0; n < dim; ++n) {
      g(n, static_cast<Eigen::Index>(j)) =
          std::polar(1.0, (energy(n) - energy(i0)) * t) * column(n);
    }
  }

  CVector first = CVector::Zero(dim);
  cplx second{};
  for (Eigen::Index n = 0; n < dim; ++n) {
    cplx cumulative{};
    cplx outer{};
    for (std::size_t j = 0; j < nt; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (j > 0) cumulative += 0.5 * h * (g(n, jj - 1) + g(n, jj));
      const double w = (j == 0 || j + 1 == nt) ? 0.5 * h : h;
      outer += w * std::conj(g(n, jj)) * cumulative;
    }
    first(n) = -kI * cumulative;
    second -= outer;
  }

  DysonEstimate out;
  // |1 + A1 + A2|^2 truncated at second order in the coupling.
  out.depletion = -2.0 * (first(i0).real() + second.real()) - std::norm(first(i0));
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (n == i0) continue;
    const double p = std::norm(first(n));
    out.depletion_first_order += p;
    if (sector_of(space, static_cast<std::size_t>(n)) == sector_slot(FermionState::Pair)) {
      out.pair += p;
    }
  }
  return out;
}

}  // namespace cqft
