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

#include "cqft/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "cqft/circuitqed.hpp"
#include "cqft/evolve.hpp"
#include "cqft/gates.hpp"
#include "cqft/observables.hpp"

#ifndef CQFT_VERSION
#define CQFT_VERSION "0.0.0"
#endif

namespace cqft {

using nlohmann::json;

std::string version() { return CQFT_VERSION; }

namespace {

class Writer {
 public:
  Writer(std::filesystem::path dir, RunResult& result)
      : dir_(std::move(dir)), result_(result) {}

  std::ofstream open(const std::string& name) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    result_.files.push_back(name);
    return out;
  }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
};

void say(const RunOptions& o, const std::string& msg) {
  if (o.verbosity > 0 && o.log != nullptr) *o.log << "[cqft] " << msg << "\n";
}

FieldModel build_model(const RunConfig& c) {
  try {
    return FieldModel::from_params(c.model);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

std::vector<double> k_values(const FieldModel& m) { return m.boson_grid().points(); }

json series_summary(const ObservableSeries& s, const Trajectory& t) {
  double sector_error = 0.0;
  for (double v : s.sector_sum) sector_error = std::max(sector_error, std::abs(v - 1.0));
  return {{"final_P_f", s.survival.back()},
          {"final_P_pair", s.pair.back()},
          {"final_P_vac", s.vacuum.back()},
          {"final_occupation", s.occupation.back()},
          {"max_sector_sum_error", sector_error},
          {"max_norm_error", t.max_norm_error},
          {"max_leakage", t.max_leakage},
          {"samples", s.times.size()}};
}

void run_scattering(const RunConfig& c, const RunOptions& o, Writer& w, RunResult& r) {
  const FieldModel model = build_model(c);
  const auto& ev = c.evolution;
  const HilbertSpace space = model.space(ev.use_ancilla);
  const StateVector initial = encode_state(c.initial, space).state;
  EvolutionConfig config = ev.to_config();
  say(o, "space " + space.describe());

  const bool want_exact = ev.method != EvolutionMethod::Trotter;
  const bool want_trotter = ev.method != EvolutionMethod::Exact;
  if (want_trotter && !ev.use_ancilla) config.trotter.use_ancilla = false;

  auto exact_job = [&] { return exact_evolve(model, initial, config, c.initial); };
  auto trotter_job = [&] { return trotter_evolve(model, initial, config, c.initial); };
  std::optional<Trajectory> exact;
  std::optional<Trajectory> trotter;
  if (want_exact && want_trotter && o.jobs > 1) {
    auto fe = std::async(std::launch::async, exact_job);
    auto ft = std::async(std::launch::async, trotter_job);
    exact = fe.get();
    trotter = ft.get();
  } else {
    if (want_exact) exact = exact_job();
    if (want_trotter) trotter = trotter_job();
  }

  json results;
  auto emit = [&](const std::string& name, const Trajectory& t) {
    const auto series = make_series(t);
    auto out = w.open("series_" + name + ".csv");
    write_csv(out, series, k_values(model));
    results[name] = series_summary(series, t);
    for (const auto& msg : t.warnings) r.warnings.push_back(name + ": " + msg);
    say(o, name + " evolution done");
  };
  if (exact) emit("exact", *exact);
  if (trotter) emit("trotter", *trotter);
  if (exact && trotter) {
    results["final_infidelity_exact_vs_trotter"] =
        infidelity(exact->final_state(), trotter->final_state());
  }
  if (want_trotter) {
    const double t_mid = c.evolution.t_start + 0.5 * config.trotter_dt;
    const auto plan = compile_trotter_step(model, t_mid, config.trotter_dt, config.trotter);
    auto out = w.open("trotter_step.txt");
    out << plan.to_text();
    results["entangling_gates_per_step"] = plan.entangling_count();
  }
  results["dimension"] = space.dim();
  r.manifest["results"] = results;
}

void run_convergence(const RunConfig& c, const RunOptions& o, Writer& w, RunResult& r) {
  const FieldModel model = build_model(c);
  const auto& ev = c.evolution;
  if (ev.dt_ladder.size() < 2) {
    throw ConfigError("evolution.dt_ladder: needs at least two entries");
  }
  const HilbertSpace space = model.space(ev.use_ancilla);
  const StateVector initial = encode_state(c.initial, space).state;
  EvolutionConfig config = ev.to_config();
  say(o, "convergence ladder on space " + space.describe());
  const auto report = trotter_error_report(model, initial, config, ev.dt_ladder);

  auto out = w.open("trotter_errors.csv");
  out << std::setprecision(17) << "dt,infidelity,distance,max_observable_deviation\n";
  for (const auto& row : report.rows) {
    out << row.dt << "," << row.infidelity << "," << row.distance << ","
        << row.max_observable_deviation << "\n";
  }
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"dt", row.dt},
                    {"infidelity", row.infidelity},
                    {"distance", row.distance},
                    {"max_observable_deviation", row.max_observable_deviation}});
  }
  r.manifest["results"] = {{"fitted_order", report.fitted_order},
                           {"control_infidelity", report.control_infidelity},
                           {"reference_dt", report.reference_dt},
                           {"monotone", report.monotone},
                           {"rows", rows},
                           {"dimension", space.dim()}};
  if (!report.monotone) r.warnings.push_back("trotter errors are not monotone in dt");
}

void run_match(const RunConfig& c, const RunOptions& o, Writer& w, RunResult& r) {
  const FieldModel model = build_model(c);
  MatchRequest req;
  req.k = model.boson_grid().points();
  for (std::size_t i = 0; i < req.k.size(); ++i) req.lambda.push_back(model.coupling().at(i));
  req.positions = c.model.qubit_positions;
  req.grid = model.x_grid();
  req.dispersion = model.dispersion();
  req.hardware = model.hardware();
  req.beta_max = c.match.beta_max;
  req.ripple_tolerance = c.match.ripple_tolerance;
  if (c.match.profile == "packet") {
    const Envelope env = model.fermion_envelope();
    const Dispersion disp = model.dispersion();
    const double t = c.match.time;
    req.profile = [env, disp, t](double x) { return std::norm(lambda1(env, x, t, disp)); };
  } else {
    const double width = c.match.width;
    req.profile = [width](double x) { return std::exp(-(x / width) * (x / width)); };
  }
  say(o, "matching couplings for " + to_string(req.hardware));
  MatchResult match;
  try {
    match = match_couplings(req);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("match: ") + e.what());
  }

  auto out = w.open("coupling_match.csv");
  out << std::setprecision(17) << "qubit,x_j,k,omega_k,lambda_k,required,beta,feasible\n";
  json qubits = json::array();
  for (std::size_t j = 0; j < match.qubits.size(); ++j) {
    const auto& q = match.qubits[j];
    for (std::size_t i = 0; i < req.k.size(); ++i) {
      out << j << "," << q.position << "," << req.k[i] << "," << model.omega(i) << ","
          << req.lambda[i] << "," << q.required[i] << "," << q.beta[i] << ","
          << (q.feasible[i] ? 1 : 0) << "\n";
    }
    qubits.push_back({{"position", q.position},
                      {"ripple", q.ripple},
                      {"constant_within_tolerance", q.constant_within_tolerance},
                      {"beta", q.beta}});
  }
  if (!match.all_feasible) r.warnings.push_back("some modes need beta above beta_max");
  r.manifest["results"] = {{"hardware", to_string(req.hardware)},
                           {"all_feasible", match.all_feasible},
                           {"qubits", qubits}};
}

void run_circuit(const RunConfig& c, const RunOptions& o, Writer& w, RunResult& r) {
  DerivedParams d;
  try {
    d = derive_params(c.circuit.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
  say(o, "circuit parameters derived");
  std::vector<double> omega_k = c.circuit.omega_k;
  if (omega_k.empty()) {
    const FieldModel model = build_model(c);
    for (std::size_t i = 0; i < model.n_modes(); ++i) {
      omega_k.push_back(model.omega(i) * c.circuit.frequency_unit);
    }
  }
  const double omega_r = c.circuit.omega_r > 0.0 ? c.circuit.omega_r : d.omega_r;
  const auto couplings = hardware_couplings(c.circuit.params, d, omega_r, omega_k,
                                            {c.circuit.m_plus, c.circuit.m_minus});

  auto out = w.open("circuit_params.txt");
  out << std::setprecision(17);
  json values;
  for (const auto& [name, v] : d.key_values()) {
    out << name << " = " << v << "\n";
    values[name] = v;
  }
  out << "resonator_coupling = " << couplings.resonator << "\n";
  auto csv = w.open("line_couplings.csv");
  csv << std::setprecision(17) << "omega_k,line_coupling\n";
  for (std::size_t i = 0; i < omega_k.size(); ++i) {
    csv << omega_k[i] << "," << couplings.line[i] << "\n";
  }
  for (const auto& msg : d.warnings) r.warnings.push_back("circuit: " + msg);
  r.manifest["results"] = {{"derived", values},
                           {"omega_r", omega_r},
                           {"resonator_coupling", couplings.resonator},
                           {"line_couplings", couplings.line}};
}

}  // namespace

RunResult run(const RunConfig& config, const std::filesystem::path& output_dir,
              const RunOptions& options) {
  std::filesystem::create_directories(output_dir);
  RunResult result;
  Writer writer(output_dir, result);
  result.manifest["version"] = version();
  result.manifest["experiment"] = to_string(config.experiment);
  result.manifest["config"] = to_json(config);

  switch (config.experiment) {
    case Experiment::SelfEnergy:
    case Experiment::PairCreation:
      run_scattering(config, options, writer, result);
      break;
    case Experiment::TrotterConvergence:
      run_convergence(config, options, writer, result);
      break;
    case Experiment::CouplingMatch:
      run_match(config, options, writer, result);
      break;
    case Experiment::CircuitParams:
      run_circuit(config, options, writer, result);
      break;
  }

  result.manifest["warnings"] = result.warnings;
  result.manifest["outputs"] = result.files;
  std::ofstream m(output_dir / "manifest.json", std::ios::binary);
  if (!m) throw std::runtime_error("cannot write manifest.json");
  m << result.manifest.dump(2) << "\n";
  result.files.push_back("manifest.json");
  return result;
}

}  // namespace cqft
