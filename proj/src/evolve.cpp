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

#include "cqft/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cqft/observables.hpp"

namespace cqft {

void EvolutionConfig::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw std::invalid_argument("evolution: need finite t_end > t_start");
  }
  if (!(substeps_per_unit > 0.0)) {
    throw std::invalid_argument("evolution: substeps_per_unit must be positive");
  }
  if (!(trotter_dt > 0.0)) throw std::invalid_argument("evolution: trotter_dt must be positive");
  if (!(leakage_threshold >= 0.0)) {
    throw std::invalid_argument("evolution: leakage_threshold must be >= 0");
  }
}

double truncation_leakage(const StateVector& state) {
  const auto& space = state.space();
  const auto& amp = state.amplitudes();
  double top = 0.0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    for (std::size_t k = 0; k < space.n_modes(); ++k) {
      if (space.occupation(i, k) == space.n_max(k)) {
        top += std::norm(amp(static_cast<Eigen::Index>(i)));
        break;
      }
    }
  }
  return top;
}

double infidelity(const StateVector& a, const StateVector& b) {
  return std::max(0.0, 1.0 - std::norm(a.inner(b)));
}

namespace {

using Step = std::function<StateVector(const StateVector&, double t0, double dt)>;

Trajectory drive(const StateVector& initial, const EvolutionConfig& config,
                 double step, std::optional<FermionState> input, const Step& advance) {
  config.validate();
  if (!initial.is_finite()) throw NumericalError("initial state is not finite");
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("initial state is not normalized");
  }
  const double span = config.t_end - config.t_start;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / step - 1e-9)));
  const std::size_t stride =
      config.samples == 0 ? 1 : std::max<std::size_t>(1, n / config.samples);

  Trajectory traj;
  traj.input = input;
  auto record = [&](double t, const StateVector& s) {
    const double leak = truncation_leakage(s);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.leakage.push_back(leak);
    traj.max_leakage = std::max(traj.max_leakage, leak);
  };
  record(config.t_start, initial);

  StateVector s = initial;
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = config.t_start + static_cast<double>(i) * step;
    const double t1 =
        i + 1 == n ? config.t_end : config.t_start + static_cast<double>(i + 1) * step;
    s = advance(s, t0, t1 - t0);
    if (!s.is_finite()) {
      std::ostringstream os;
      os << "non-finite state at t = " << t1;
      throw NumericalError(os.str());
    }
    traj.max_norm_error = std::max(traj.max_norm_error, std::abs(s.norm() - 1.0));
    if ((i + 1) % stride == 0 || i + 1 == n) record(t1, s);
  }
  if (traj.max_leakage > config.leakage_threshold) {
    std::ostringstream os;
    os << "truncation leakage " << traj.max_leakage << " exceeds threshold "
       << config.leakage_threshold;
    traj.warnings.push_back(os.str());
  }
  return traj;
}

}  // namespace

Trajectory exact_evolve(const FieldModel& model, const StateVector& initial,
                        const EvolutionConfig& config,
                        std::optional<FermionState> input) {
  const auto& space = initial.space();
  const SparseOperator h_free = build_h_free(model, space);
  const double span = config.t_end - config.t_start;
  const double n = std::max(1.0, std::ceil(span * config.substeps_per_unit - 1e-9));
  const double delta = span / n;
  return drive(initial, config, delta, input,
               [&](const StateVector& s, double t0, double dt) {
                 const SparseOperator h =
                     h_free + build_h_int(model, t0 + 0.5 * dt, space,
                                          config.representation);
                 return expm_apply(h, -kI * dt, s, config.expm);
               });
}

Trajectory trotter_evolve(const FieldModel& model, const StateVector& initial,
                          const EvolutionConfig& config,
                          std::optional<FermionState> input) {
  const auto& space = initial.space();
  TrotterOptions options = config.trotter;
  if (options.use_ancilla && space.n_qubits() < 3) {
    throw std::invalid_argument(
        "trotter_evolve: the ancilla needs a third qubit in the state space");
  }
  return drive(initial, config, config.trotter_dt, input,
               [&](const StateVector& s, double t0, double dt) {
                 const auto plan =
                     compile_trotter_step(model, t0 + 0.5 * dt, dt, options);
                 return plan.apply(s, config.expm);
               });
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double observable_deviation(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  const auto pa = sector_probabilities(a);
  const auto pb = sector_probabilities(b);
  for (std::size_t i = 0; i < pa.size(); ++i) d = std::max(d, std::abs(pa[i] - pb[i]));
  const auto na = boson_spectrum(a).mean;
  const auto nb = boson_spectrum(b).mean;
  for (std::size_t k = 0; k < na.size(); ++k) d = std::max(d, std::abs(na[k] - nb[k]));
  return d;
}

}  // namespace

ErrorReport trotter_error_report(const FieldModel& model, const StateVector& initial,
                                 const EvolutionConfig& config,
                                 const std::vector<double>& dt_ladder) {
  if (dt_ladder.empty()) throw std::invalid_argument("trotter_error_report: empty dt ladder");
  std::vector<double> ladder = dt_ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<>());

  ErrorReport report;
  report.reference_dt = ladder.back() / 8.0;
  EvolutionConfig ref_config = config;
  ref_config.samples = 1;
  ref_config.substeps_per_unit = 1.0 / report.reference_dt;
  const StateVector reference = exact_evolve(model, initial, ref_config).final_state();

  EvolutionConfig control_config = ref_config;
  control_config.expm.method =
      config.expm.method == ExpmMethod::Dense ? ExpmMethod::Krylov : ExpmMethod::Dense;
  if (control_config.expm.method == ExpmMethod::Dense &&
      initial.space().dim() > config.expm.dense_max_dim) {
    control_config.expm.method = ExpmMethod::Krylov;
    control_config.expm.krylov_dim = config.expm.krylov_dim + 10;
  }
  report.control_infidelity =
      infidelity(reference, exact_evolve(model, initial, control_config).final_state());

  std::vector<double> xs;
  std::vector<double> ys;
  for (double dt : ladder) {
    EvolutionConfig tc = config;
    tc.samples = 1;
    tc.trotter_dt = dt;
    const StateVector psi = trotter_evolve(model, initial, tc).final_state();
    ErrorRow row;
    row.dt = dt;
    row.infidelity = infidelity(reference, psi);
    row.distance = std::sqrt(row.infidelity);
    row.max_observable_deviation = observable_deviation(reference, psi);
    report.rows.push_back(row);
    xs.push_back(dt);
    ys.push_back(row.distance);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].distance > report.rows[i - 1].distance * (1.0 + 1e-6) + 1e-12) {
      report.monotone = false;
    }
  }
  if (xs.size() >= 2 && std::all_of(ys.begin(), ys.end(), [](double v) { return v > 0; })) {
    report.fitted_order = fit_loglog_slope(xs, ys);
  }
  return report;
}

}  // namespace cqft
