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

#include "cqft/gates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cqft {

namespace {

constexpr double kPi = std::numbers::pi;

PauliAxis to_axis(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return PauliAxis::X;
    case PauliLetter::Y: return PauliAxis::Y;
    case PauliLetter::Z: return PauliAxis::Z;
    default: break;
  }
  throw std::invalid_argument("gate axis must be x, y or z");
}

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return 'x';
    case PauliLetter::Y: return 'y';
    case PauliLetter::Z: return 'z';
    default: return 'I';
  }
}

CMatrix single(PauliLetter l) { return to_matrix(PauliString{{l}, 1.0}); }

void require_finite(const std::vector<cplx>& c, const char* what) {
  for (const auto& v : c) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError(std::string(what) + ": non-finite coefficient");
    }
  }
}

void require_qubit(const HilbertSpace& space, std::size_t q) {
  if (q >= space.n_qubits()) {
    throw std::out_of_range("gate qubit " + std::to_string(q) +
                            " outside the space (" +
                            std::to_string(space.n_qubits()) + " qubits)");
  }
}

// sum_k (c_k a^dag_k - conj(c_k) a_k) on the full space.
SparseOperator displacement(const HilbertSpace& space, const std::vector<cplx>& c) {
  if (c.size() > space.n_modes()) {
    throw std::invalid_argument("displacement: more coefficients than modes");
  }
  SparseOperator d = SparseOperator::zero(space);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == cplx{}) continue;
    d += c[k] * boson_op(space, k, BosonKind::Create);
    d -= std::conj(c[k]) * boson_op(space, k, BosonKind::Annihilate);
  }
  return d;
}

// Dense matrix of the qubit-only gates on the full qubit factor.
CMatrix qubit_generator(const Gate& g, const HilbertSpace& space) {
  const HilbertSpace qs(space.n_qubits(), {});
  SparseOperator gen = SparseOperator::zero(qs);
  if (g.kind == GateKind::MS) {
    SparseOperator s = SparseOperator::zero(qs);
    for (auto q : g.qubits) {
      require_qubit(space, q);
      s += cplx(std::cos(g.phi)) * pauli_op(qs, q, PauliAxis::X);
      s += cplx(std::sin(g.phi)) * pauli_op(qs, q, PauliAxis::Y);
    }
    gen = (-kI * g.theta / 4.0) * (s * s);
  } else {
    require_qubit(space, g.qubits.at(0));
    gen = (-kI * g.theta / 2.0) * pauli_op(qs, g.qubits[0], to_axis(g.axis));
  }
  return gen.dense();
}

bool is_qubit_gate(GateKind k) { return k == GateKind::MS || k == GateKind::LocalRot; }

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::MS: return "MS";
    case GateKind::CondDisp: return "COND_DISP";
    case GateKind::LocalRot: return "LOCAL_ROT";
    case GateKind::AncillaDisp: return "ANCILLA_DISP";
    case GateKind::Disp: return "DISP";
    case GateKind::FreePhase: return "FREE_PHASE";
  }
  return "?";
}

// Gate

SparseOperator Gate::generator(const HilbertSpace& space) const {
  switch (kind) {
    case GateKind::MS:
    case GateKind::LocalRot:
      return qubit_operator(space, qubit_generator(*this, space));
    case GateKind::CondDisp:
    case GateKind::AncillaDisp: {
      require_qubit(space, qubits.at(0));
      return cplx(-phi) *
             (pauli_op(space, qubits[0], to_axis(axis)) * displacement(space, coefficients));
    }
    case GateKind::Disp:
      return cplx(-phi) * displacement(space, coefficients);
    case GateKind::FreePhase: {
      if (frequencies.size() > space.n_modes()) {
        throw std::invalid_argument("FREE_PHASE: more frequencies than modes");
      }
      SparseOperator h = SparseOperator::zero(space);
      for (std::size_t k = 0; k < frequencies.size(); ++k) {
        h += cplx(frequencies[k]) * boson_op(space, k, BosonKind::Number);
      }
      return (-kI * theta) * h;
    }
  }
  throw std::logic_error("unknown gate kind");
}

SparseOperator Gate::unitary(const HilbertSpace& space,
                             const ExpmOptions& options) const {
  if (is_qubit_gate(kind)) {
    return qubit_operator(space, dense_expm(qubit_generator(*this, space)));
  }
  if (kind == GateKind::FreePhase) {
    const auto gen = generator(space);
    SparseMatrix u(gen.matrix().rows(), gen.matrix().cols());
    u.setIdentity();
    for (Eigen::Index i = 0; i < gen.matrix().outerSize(); ++i) {
      for (SparseMatrix::InnerIterator it(gen.matrix(), i); it; ++it) {
        u.coeffRef(it.row(), it.col()) = std::exp(it.value());
      }
    }
    return {space, u};
  }
  return op_expm(generator(space), 1.0, options);
}

StateVector Gate::apply(const StateVector& state, const ExpmOptions& options) const {
  const auto& space = state.space();
  if (is_qubit_gate(kind) || kind == GateKind::FreePhase) {
    return cqft::apply(unitary(space, options), state);
  }
  bool trivial = phi == 0.0;
  trivial = trivial || std::all_of(coefficients.begin(), coefficients.end(),
                                   [](cplx c) { return c == cplx{}; });
  if (trivial) return state;
  return expm_apply(generator(space), 1.0, state, options);
}

std::string Gate::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17) << to_string(kind);
  if (!qubits.empty()) {
    os << " qubits=";
    for (std::size_t i = 0; i < qubits.size(); ++i) os << (i ? "," : "") << qubits[i];
  }
  switch (kind) {
    case GateKind::MS: os << " theta=" << theta << " phi=" << phi; break;
    case GateKind::LocalRot: os << " axis=" << letter_char(axis) << " angle=" << theta; break;
    case GateKind::CondDisp:
    case GateKind::AncillaDisp:
      os << " axis=" << letter_char(axis) << " phi=" << phi;
      break;
    case GateKind::Disp: os << " phi=" << phi; break;
    case GateKind::FreePhase: os << " dt=" << theta; break;
  }
  if (!coefficients.empty()) {
    os << " c=[";
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      os << (k ? ";" : "") << coefficients[k].real() << ","
         << coefficients[k].imag();
    }
    os << "]";
  }
  if (!frequencies.empty()) {
    os << " omega=[";
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
      os << (k ? ";" : "") << frequencies[k];
    }
    os << "]";
  }
  os << " entangling=" << (entangling ? 1 : 0);
  return os.str();
}

Gate make_ms(double theta, double phi, std::vector<std::size_t> qubits) {
  if (qubits.size() < 2) throw std::invalid_argument("MS gate needs at least 2 qubits");
  if (std::abs(theta) > kPi + 1e-12) {
    throw std::invalid_argument("MS gate: theta outside [-pi, pi]");
  }
  std::vector<std::size_t> sorted = qubits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("MS gate: repeated qubit");
  }
  Gate g;
  g.kind = GateKind::MS;
  g.theta = theta;
  g.phi = phi;
  g.qubits = std::move(qubits);
  g.entangling = true;
  return g;
}

Gate make_cond_disp(PauliLetter axis, std::size_t qubit, double phi,
                    std::vector<cplx> coefficients) {
  to_axis(axis);
  require_finite(coefficients, "cond_disp");
  if (!std::isfinite(phi)) throw NumericalError("cond_disp: non-finite phi");
  Gate g;
  g.kind = GateKind::CondDisp;
  g.axis = axis;
  g.qubits = {qubit};
  g.phi = phi;
  g.coefficients = std::move(coefficients);
  return g;
}

Gate make_ancilla_disp(std::size_t qubit, double phi, std::vector<cplx> coefficients) {
  Gate g = make_cond_disp(PauliLetter::Z, qubit, phi, std::move(coefficients));
  g.kind = GateKind::AncillaDisp;
  return g;
}

Gate make_disp(double phi, std::vector<cplx> coefficients) {
  require_finite(coefficients, "disp");
  Gate g;
  g.kind = GateKind::Disp;
  g.phi = phi;
  g.coefficients = std::move(coefficients);
  return g;
}

Gate make_local_rot(std::size_t qubit, PauliLetter axis, double angle) {
  to_axis(axis);
  Gate g;
  g.kind = GateKind::LocalRot;
  g.axis = axis;
  g.qubits = {qubit};
  g.theta = angle;
  return g;
}

Gate make_free_phase(double dt, std::vector<double> frequencies) {
  Gate g;
  g.kind = GateKind::FreePhase;
  g.theta = dt;
  g.frequencies = std::move(frequencies);
  return g;
}

SparseOperator ms_gate(double theta, double phi, const std::vector<std::size_t>& qubits,
                       const HilbertSpace& space) {
  return make_ms(theta, phi, qubits).unitary(space);
}

SparseOperator cond_disp(PauliLetter axis, std::size_t qubit, double phi,
                         const std::vector<cplx>& coefficients,
                         const HilbertSpace& space) {
  return make_cond_disp(axis, qubit, phi, coefficients).unitary(space);
}

// String compiler

namespace {

struct Rotation {
  PauliLetter axis;
  double angle;
  double sign;  // R from R^dag... : R from_letter R^dag = sign * to_letter
};

PauliLetter third(PauliLetter a, PauliLetter b) {
  for (auto l : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
    if (l != a && l != b) return l;
  }
  return PauliLetter::I;
}

// Rotation R = exp(-i angle sigma_axis / 2) with R from R^dag = sign * to.
Rotation clifford_between(PauliLetter from, PauliLetter to) {
  const PauliLetter axis = third(from, to);
  const CMatrix a = single(axis);
  const CMatrix f = single(from);
  const CMatrix t = single(to);
  for (double angle : {kPi / 2.0, -kPi / 2.0}) {
    const CMatrix r = dense_expm(-kI * angle / 2.0 * a);
    const CMatrix m = r * f * r.adjoint();
    const cplx s = (t.adjoint() * m).trace() / 2.0;
    if (std::abs(std::abs(s) - 1.0) < 1e-12 && std::abs(s.imag()) < 1e-12) {
      return {axis, angle, s.real()};
    }
  }
  throw std::logic_error("no Clifford rotation between the letters");
}

struct Choice {
  std::size_t pivot = 0;
  PauliLetter central = PauliLetter::Z;
  PauliString conjugated;  // V^dag central_pivot V, prefactor +-1
  int rotations = 0;
};

// V^dag A_q V for V = MS(pi/2, 0) on `support`: every X_q X_j factor
// anticommuting with A_q contributes -i X_q X_j.
PauliString conjugate_by_ms(std::size_t n, const std::vector<std::size_t>& support,
                            std::size_t pivot, PauliLetter central) {
  PauliString p;
  p.letters.assign(n, PauliLetter::I);
  p.letters[pivot] = central;
  for (auto j : support) {
    if (j == pivot) continue;
    PauliString xx;
    xx.letters.assign(n, PauliLetter::I);
    xx.letters[pivot] = PauliLetter::X;
    xx.letters[j] = PauliLetter::X;
    xx.prefactor = -kI;
    p = multiply(p, xx);
  }
  return p;
}

}  // namespace

std::vector<Gate> compile_string_exponential(const PauliString& string, double phi,
                                             const std::vector<cplx>& coefficients,
                                             const StringCompileOptions& options) {
  if (!string.is_hermitian_basis()) {
    throw std::invalid_argument(
        "compile_string_exponential: letters must be I, x, y or z");
  }
  const auto support = string.support();
  if (support.empty()) {
    throw std::invalid_argument(
        "compile_string_exponential: string acts on no qubit");
  }
  if (std::abs(string.prefactor.imag()) > 1e-14 ||
      std::abs(std::abs(string.prefactor.real()) - 1.0) > 1e-14) {
    throw std::invalid_argument(
        "compile_string_exponential: prefactor must be +1 or -1");
  }
  require_finite(coefficients, "compile_string_exponential");
  const std::size_t n = string.size();
  const std::vector<PauliLetter> centrals =
      options.native ? std::vector<PauliLetter>{PauliLetter::Y}
                     : std::vector<PauliLetter>{PauliLetter::Z, PauliLetter::Y,
                                                PauliLetter::X};

  Choice best;
  best.rotations = std::numeric_limits<int>::max();
  for (auto pivot : support) {
    for (auto central : centrals) {
      PauliString q;
      if (support.size() == 1) {
        q.letters.assign(n, PauliLetter::I);
        q.letters[pivot] = central;
      } else {
        if (central == PauliLetter::X) continue;  // commutes with the MS pairs
        q = conjugate_by_ms(n, support, pivot, central);
      }
      int rot = 0;
      for (auto j : support) rot += q.letters[j] != string.letters[j] ? 1 : 0;
      if (rot < best.rotations) best = {pivot, central, q, rot};
    }
  }

  // L Q L^dag = s P with L a product of single-qubit rotations.
  double s = string.prefactor.real();
  const cplx c = best.conjugated.prefactor;
  if (std::abs(c.imag()) > 1e-12) {
    throw std::logic_error("compile_string_exponential: non-Hermitian conjugate");
  }
  std::vector<Gate> rotations;
  for (auto j : support) {
    if (best.conjugated.letters[j] == string.letters[j]) continue;
    const auto r = clifford_between(best.conjugated.letters[j], string.letters[j]);
    s *= r.sign;
    rotations.push_back(make_local_rot(j, r.axis, r.angle));
  }

  // exp(phi P D) = L V^dag exp(-phi_c A_q D) V L^dag with phi_c = -phi c s.
  const double phi_c = -phi * c.real() * s;
  std::vector<Gate> out;
  for (const auto& r : rotations) out.push_back(make_local_rot(r.qubits[0], r.axis, -r.theta));
  if (support.size() > 1) out.push_back(make_ms(kPi / 2.0, 0.0, support));
  out.push_back(make_cond_disp(best.central, best.pivot, phi_c, coefficients));
  if (support.size() > 1) out.push_back(make_ms(-kPi / 2.0, 0.0, support));
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) out.push_back(*it);
  return out;
}

// TrotterPlan

TrotterPlan::TrotterPlan(std::vector<Gate> gates, double t_mid, double dt,
                         std::vector<HamiltonianTerm> terms)
    : gates_(std::move(gates)), t_mid_(t_mid), dt_(dt), terms_(std::move(terms)) {}

std::size_t TrotterPlan::entangling_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [](const Gate& g) { return g.entangling; }));
}

SparseOperator TrotterPlan::unitary(const HilbertSpace& space,
                                    const ExpmOptions& options) const {
  SparseOperator u = SparseOperator::identity(space);
  for (const auto& g : gates_) u = g.unitary(space, options) * u;
  return u;
}

StateVector TrotterPlan::apply(const StateVector& state,
                               const ExpmOptions& options) const {
  StateVector s = state;
  for (const auto& g : gates_) s = g.apply(s, options);
  return s;
}

std::string TrotterPlan::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17) << "# trotter step t_mid=" << t_mid_ << " dt=" << dt_
     << " gates=" << gates_.size() << " entangling=" << entangling_count() << "\n";
  for (const auto& g : gates_) os << g.to_text() << "\n";
  return os.str();
}

TrotterPlan compile_terms(const std::vector<HamiltonianTerm>& terms,
                          const std::vector<double>& frequencies,
                          std::size_t n_system_qubits, double t_mid, double dt,
                          const TrotterOptions& options) {
  if (n_system_qubits != 2 && !options.allow_n_mode) {
    throw std::invalid_argument(
        "compile_terms: more than two system qubits needs the n-mode flag");
  }
  std::map<std::string, const HamiltonianTerm*> by_name;
  for (const auto& t : terms) {
    if (t.paulis.empty()) {
      throw std::invalid_argument("compile_terms: term '" + t.name +
                                  "' has no Pauli decomposition");
    }
    if (!by_name.emplace(t.name, &t).second) {
      throw std::invalid_argument("compile_terms: duplicate term '" + t.name + "'");
    }
  }
  std::vector<const HamiltonianTerm*> ordered;
  for (const auto& name : options.order) {
    auto it = by_name.find(name);
    if (it == by_name.end()) continue;
    ordered.push_back(it->second);
    by_name.erase(it);
  }
  if (!by_name.empty()) {
    throw std::invalid_argument("compile_terms: term '" + by_name.begin()->first +
                                "' missing from the block order");
  }

  const StringCompileOptions string_options{options.native};
  std::vector<Gate> gates;
  for (const auto* term : ordered) {
    const auto& u = term->creation;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double scale = std::max({1.0, std::abs(u[k])});
      if (std::abs(term->annihilation[k] - std::conj(u[k])) > 1e-12 * scale) {
        throw std::invalid_argument("compile_terms: term '" + term->name +
                                    "' is not of the form i(c a^dag - c* a)");
      }
    }
    for (const auto& p : term->paulis) {
      if (p.size() != n_system_qubits) {
        throw std::invalid_argument("compile_terms: string length differs from the "
                                    "system qubit count");
      }
      const double phi = dt * p.prefactor.real();
      if (p.is_identity()) {
        if (options.use_ancilla) {
          gates.push_back(make_ancilla_disp(n_system_qubits, -phi, u));
        } else {
          gates.push_back(make_disp(-phi, u));
        }
        continue;
      }
      PauliString unit = p;
      unit.prefactor = 1.0;
      auto seq = compile_string_exponential(unit, phi, u, string_options);
      gates.insert(gates.end(), seq.begin(), seq.end());
    }
  }
  gates.push_back(make_free_phase(dt, frequencies));
  return {std::move(gates), t_mid, dt, terms};
}

TrotterPlan compile_trotter_step(const FieldModel& model, double t_mid, double dt,
                                 const TrotterOptions& options) {
  std::vector<double> omega(model.n_modes());
  for (std::size_t k = 0; k < omega.size(); ++k) omega[k] = model.omega(k);
  return compile_terms(build_terms_pauli(model, t_mid, true), omega, 2, t_mid, dt,
                       options);
}

}  // namespace cqft
