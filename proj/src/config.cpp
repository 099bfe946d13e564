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

#include "cqft/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cqft {

using nlohmann::json;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::SelfEnergy: return "self-energy";
    case Experiment::PairCreation: return "pair-creation";
    case Experiment::TrotterConvergence: return "trotter-convergence";
    case Experiment::CouplingMatch: return "coupling-match";
    case Experiment::CircuitParams: return "circuit-params";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::SelfEnergy, Experiment::PairCreation,
                 Experiment::TrotterConvergence, Experiment::CouplingMatch,
                 Experiment::CircuitParams}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("experiment: unknown value '" + name +
                    "' (expected self-energy, pair-creation, trotter-convergence, "
                    "coupling-match or circuit-params)");
}

namespace {

std::string method_name(EvolutionMethod m) {
  switch (m) {
    case EvolutionMethod::Exact: return "exact";
    case EvolutionMethod::Trotter: return "trotter";
    case EvolutionMethod::Both: return "both";
  }
  return "?";
}

std::string expm_name(ExpmMethod m) {
  switch (m) {
    case ExpmMethod::Auto: return "auto";
    case ExpmMethod::Dense: return "dense";
    case ExpmMethod::Krylov: return "krylov";
  }
  return "?";
}

std::string repr_name(Representation r) {
  return r == Representation::Fermionic ? "fermionic" : "pauli";
}

// Reads the keys of one JSON object and rejects the ones nobody asked for.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("", "expected an object");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) fail(it.key(), "unknown key");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) fail(key, "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(key, "must be finite");
    }
  }

  void positive(const std::string& key, double& out) {
    number(key, out);
    if (!(out > 0.0)) fail(key, "must be positive");
  }

  void nonnegative(const std::string& key, double& out) {
    number(key, out);
    if (!(out >= 0.0)) fail(key, "must be >= 0");
  }

  void count(const std::string& key, std::size_t& out, std::size_t min_value) {
    if (const json* v = get(key)) {
      if (!v->is_number_integer() || v->get<long long>() < static_cast<long long>(min_value)) {
        fail(key, "expected an integer >= " + std::to_string(min_value));
      }
      out = v->get<std::size_t>();
    }
  }

  void integer(const std::string& key, int& out, int min_value) {
    std::size_t v = static_cast<std::size_t>(out);
    count(key, v, static_cast<std::size_t>(min_value));
    out = static_cast<int>(v);
  }

  void flag(const std::string& key, bool& out) {
    if (const json* v = get(key)) {
      if (!v->is_boolean()) fail(key, "expected true or false");
      out = v->get<bool>();
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = get(key)) {
      if (!v->is_string()) fail(key, "expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = get(key)) {
      if (!v->is_array()) fail(key, "expected an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) fail(key, "expected an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  void strings(const std::string& key, std::vector<std::string>& out) {
    if (const json* v = get(key)) {
      if (!v->is_array()) fail(key, "expected an array of strings");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_string()) fail(key, "expected an array of strings");
        out.push_back(e.get<std::string>());
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    std::string where = path_;
    if (!key.empty()) where += (where.empty() ? "" : ".") + key;
    throw ConfigError((where.empty() ? std::string("config") : where) + ": " + message);
  }

  std::string path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_model(const json& node, ModelParams& m) {
  Section s(node, "model");
  s.positive("fermion_mass", m.fermion_mass);
  s.number("k_min", m.k_min);
  s.number("k_max", m.k_max);
  s.count("n_k", m.n_k, 1);
  s.integer("n_max", m.n_max, 1);
  s.number("p_min", m.p_min);
  s.number("p_max", m.p_max);
  s.count("n_p", m.n_p, 2);
  s.number("p_f", m.p_f);
  s.number("p_fbar", m.p_fbar);
  s.positive("sigma_p", m.sigma_p);
  s.number("coupling", m.coupling);
  s.numbers("coupling_table", m.coupling_table);
  std::string hw = to_string(m.hardware);
  s.text("hardware", hw);
  try {
    m.hardware = hardware_kind_from_string(hw);
  } catch (const std::invalid_argument& e) {
    s.fail("hardware", e.what());
  }
  s.numbers("qubit_positions", m.qubit_positions);
  s.number("x_half_width", m.x_half_width);
  s.number("x_margin", m.x_margin);
  s.positive("x_step", m.x_step);
  if (!(m.k_max > m.k_min)) s.fail("k_max", "must exceed k_min");
  if (m.k_min < 0.0) s.fail("k_min", "must be >= 0 (omega_k = |k| on the band)");
  if (!(m.p_max > m.p_min)) s.fail("p_max", "must exceed p_min");
  if (!m.coupling_table.empty() && m.coupling_table.size() != m.n_k) {
    s.fail("coupling_table", "needs exactly n_k entries");
  }
  if (m.qubit_positions.size() != 3) s.fail("qubit_positions", "needs 3 entries");
}

void read_evolution(const json& node, EvolutionSection& e) {
  Section s(node, "evolution");
  s.number("t_start", e.t_start);
  s.number("t_end", e.t_end);
  s.positive("substeps_per_unit", e.substeps_per_unit);
  s.positive("trotter_dt", e.trotter_dt);
  s.numbers("dt_ladder", e.dt_ladder);
  s.number("leakage_threshold", e.leakage_threshold);
  s.count("samples", e.samples, 0);
  std::string method = method_name(e.method);
  s.text("method", method);
  if (method == "exact") e.method = EvolutionMethod::Exact;
  else if (method == "trotter") e.method = EvolutionMethod::Trotter;
  else if (method == "both") e.method = EvolutionMethod::Both;
  else s.fail("method", "expected exact, trotter or both");
  std::string repr = repr_name(e.representation);
  s.text("representation", repr);
  if (repr == "fermionic") e.representation = Representation::Fermionic;
  else if (repr == "pauli") e.representation = Representation::Pauli;
  else s.fail("representation", "expected fermionic or pauli");
  s.flag("use_ancilla", e.use_ancilla);
  s.flag("native_gates", e.native_gates);
  s.strings("block_order", e.block_order);
  std::string expm = expm_name(e.expm);
  s.text("expm", expm);
  if (expm == "auto") e.expm = ExpmMethod::Auto;
  else if (expm == "dense") e.expm = ExpmMethod::Dense;
  else if (expm == "krylov") e.expm = ExpmMethod::Krylov;
  else s.fail("expm", "expected auto, dense or krylov");
  s.count("krylov_dim", e.krylov_dim, 4);
  s.positive("krylov_tol", e.krylov_tol);

  if (!(e.t_end > e.t_start)) s.fail("t_end", "must exceed t_start");
  if (e.leakage_threshold < 0.0) s.fail("leakage_threshold", "must be >= 0");
  for (double dt : e.dt_ladder) {
    if (!(dt > 0.0)) s.fail("dt_ladder", "entries must be positive");
  }
  const std::set<std::string> known = {"II", "Iz", "zI", "xx-yy", "yx+xy"};
  std::set<std::string> order(e.block_order.begin(), e.block_order.end());
  if (order != known || e.block_order.size() != known.size()) {
    s.fail("block_order", "must list II, Iz, zI, xx-yy and yx+xy once each");
  }
}

void read_circuit(const json& node, CircuitSection& c) {
  Section s(node, "circuit");
  auto& p = c.params;
  s.positive("C_r", p.C_r);
  s.positive("L_r", p.L_r);
  s.positive("c_tl", p.c_tl);
  s.positive("l_tl", p.l_tl);
  s.positive("line_length", p.line_length);
  s.nonnegative("C_c1", p.C_c1);
  s.nonnegative("C_c2", p.C_c2);
  s.nonnegative("C_gp", p.C_gp);
  s.nonnegative("C_gm", p.C_gm);
  s.nonnegative("C_I", p.C_I);
  s.nonnegative("C_p", p.C_p);
  s.nonnegative("C_m", p.C_m);
  s.number("V_gp", p.V_gp);
  s.number("V_gm", p.V_gm);
  s.nonnegative("E_Jp", p.E_Jp);
  s.nonnegative("E_Jm", p.E_Jm);
  s.positive("charge", p.charge);
  s.number("omega_r", c.omega_r);
  s.numbers("omega_k", c.omega_k);
  s.positive("frequency_unit", c.frequency_unit);
  s.number("m_plus", c.m_plus);
  s.number("m_minus", c.m_minus);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    s.fail("", e.what());
  }
}

void read_match(const json& node, MatchSection& m) {
  Section s(node, "match");
  s.text("profile", m.profile);
  if (m.profile != "packet" && m.profile != "gaussian") {
    s.fail("profile", "expected packet or gaussian");
  }
  s.positive("width", m.width);
  s.number("time", m.time);
  s.positive("beta_max", m.beta_max);
  s.positive("ripple_tolerance", m.ripple_tolerance);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

EvolutionConfig EvolutionSection::to_config() const {
  EvolutionConfig c;
  c.t_start = t_start;
  c.t_end = t_end;
  c.substeps_per_unit = substeps_per_unit;
  c.trotter_dt = trotter_dt;
  c.leakage_threshold = leakage_threshold;
  c.samples = samples;
  c.representation = representation;
  c.trotter.use_ancilla = use_ancilla;
  c.trotter.native = native_gates;
  c.trotter.order = block_order;
  c.expm.method = expm;
  c.expm.krylov_dim = krylov_dim;
  c.expm.krylov_tol = krylov_tol;
  return c;
}

CircuitParams default_circuit_params() {
  CircuitParams p;
  p.C_r = 500e-15;
  p.L_r = 2e-9;
  p.c_tl = 1.6e-10;
  p.l_tl = 4.0e-7;
  p.line_length = 0.01;
  p.C_c1 = 5e-15;
  p.C_c2 = 5e-15;
  p.C_gp = 0.1e-15;
  p.C_gm = 0.1e-15;
  p.C_I = 20e-15;
  p.C_p = 50e-15;
  p.C_m = 50e-15;
  p.V_gp = 0.0;
  p.V_gm = 0.0;
  p.E_Jp = 1.3e-23;
  p.E_Jm = 1.3e-23;
  return p;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed config ("
       << e.what() << ")";
    throw ConfigError(os.str());
  }

  RunConfig c;
  c.circuit.params = default_circuit_params();
  Section s(root, "");
  std::string experiment;
  if (!s.has("experiment")) s.fail("experiment", "missing (required)");
  s.text("experiment", experiment);
  c.experiment = experiment_from_string(experiment);
  c.initial = c.experiment == Experiment::PairCreation ? FermionState::Vacuum
                                                       : FermionState::F;
  if (const json* v = s.get("initial_state")) {
    if (!v->is_string()) s.fail("initial_state", "expected a string");
    try {
      c.initial = fermion_state_from_string(v->get<std::string>());
    } catch (const std::invalid_argument& e) {
      s.fail("initial_state", e.what());
    }
  }
  if (const json* v = s.get("model")) read_model(*v, c.model);
  if (const json* v = s.get("evolution")) read_evolution(*v, c.evolution);
  if (const json* v = s.get("circuit")) read_circuit(*v, c.circuit);
  if (const json* v = s.get("match")) read_match(*v, c.match);
  if (const json* v = s.get("output")) {
    Section o(*v, "output");
    o.text("directory", c.output.directory);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream os;
  os << in.rdbuf();
  try {
    return parse_config(os.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["initial_state"] = to_string(c.initial);
  const auto& m = c.model;
  j["model"] = {{"fermion_mass", m.fermion_mass},
                {"k_min", m.k_min},
                {"k_max", m.k_max},
                {"n_k", m.n_k},
                {"n_max", m.n_max},
                {"p_min", m.p_min},
                {"p_max", m.p_max},
                {"n_p", m.n_p},
                {"p_f", m.p_f},
                {"p_fbar", m.p_fbar},
                {"sigma_p", m.sigma_p},
                {"coupling", m.coupling},
                {"coupling_table", m.coupling_table},
                {"hardware", to_string(m.hardware)},
                {"qubit_positions", m.qubit_positions},
                {"x_half_width", m.x_half_width},
                {"x_margin", m.x_margin},
                {"x_step", m.x_step}};
  const auto& e = c.evolution;
  j["evolution"] = {{"t_start", e.t_start},
                    {"t_end", e.t_end},
                    {"substeps_per_unit", e.substeps_per_unit},
                    {"trotter_dt", e.trotter_dt},
                    {"dt_ladder", e.dt_ladder},
                    {"leakage_threshold", e.leakage_threshold},
                    {"samples", e.samples},
                    {"method", method_name(e.method)},
                    {"representation", repr_name(e.representation)},
                    {"use_ancilla", e.use_ancilla},
                    {"native_gates", e.native_gates},
                    {"block_order", e.block_order},
                    {"expm", expm_name(e.expm)},
                    {"krylov_dim", e.krylov_dim},
                    {"krylov_tol", e.krylov_tol}};
  const auto& p = c.circuit.params;
  j["circuit"] = {{"C_r", p.C_r},       {"L_r", p.L_r},
                  {"c_tl", p.c_tl},     {"l_tl", p.l_tl},
                  {"line_length", p.line_length},
                  {"C_c1", p.C_c1},     {"C_c2", p.C_c2},
                  {"C_gp", p.C_gp},     {"C_gm", p.C_gm},
                  {"C_I", p.C_I},       {"C_p", p.C_p},
                  {"C_m", p.C_m},       {"V_gp", p.V_gp},
                  {"V_gm", p.V_gm},     {"E_Jp", p.E_Jp},
                  {"E_Jm", p.E_Jm},     {"charge", p.charge},
                  {"omega_r", c.circuit.omega_r},
                  {"omega_k", c.circuit.omega_k},
                  {"frequency_unit", c.circuit.frequency_unit},
                  {"m_plus", c.circuit.m_plus},
                  {"m_minus", c.circuit.m_minus}};
  j["match"] = {{"profile", c.match.profile},
                {"width", c.match.width},
                {"time", c.match.time},
                {"beta_max", c.match.beta_max},
                {"ripple_tolerance", c.match.ripple_tolerance}};
  j["output"] = {{"directory", c.output.directory}};
  return j;
}

}  // namespace cqft
