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

#include <cstddef>
#include <string>
#include <vector>

#include "cqft/encoding.hpp"
#include "cqft/hilbert.hpp"
#include "cqft/model.hpp"

namespace cqft {

enum class GateKind { MS, CondDisp, LocalRot, AncillaDisp, Disp, FreePhase };

std::string to_string(GateKind kind);

/**
 * One gate of a digital step. Every gate is U = exp(G) for the generator
 * returned by generator():
 *
 *   MS           G = -i theta (cos phi S_x + sin phi S_y)^2 / 4 on `qubits`
 *   CondDisp     G = -phi sigma^axis_q (x) D
 *   AncillaDisp  same as CondDisp, on an ancilla qubit with axis z
 *   Disp         G = -phi D (no qubit)
 *   LocalRot     G = -i theta sigma^axis_q / 2
 *   FreePhase    G = -i theta sum_k frequencies_k n_k
 *
 * with D = sum_k (c_k a^dag_k - conj(c_k) a_k).
 */
struct Gate {
  GateKind kind = GateKind::MS;
  std::vector<std::size_t> qubits;
  PauliLetter axis = PauliLetter::Z;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<cplx> coefficients;
  std::vector<double> frequencies;
  bool entangling = false;

  SparseOperator generator(const HilbertSpace& space) const;
  SparseOperator unitary(const HilbertSpace& space,
                         const ExpmOptions& options = {}) const;
  StateVector apply(const StateVector& state,
                    const ExpmOptions& options = {}) const;
  std::string to_text() const;
};

Gate make_ms(double theta, double phi, std::vector<std::size_t> qubits);
Gate make_cond_disp(PauliLetter axis, std::size_t qubit, double phi,
                    std::vector<cplx> coefficients);
Gate make_ancilla_disp(std::size_t qubit, double phi,
                       std::vector<cplx> coefficients);
Gate make_disp(double phi, std::vector<cplx> coefficients);
Gate make_local_rot(std::size_t qubit, PauliLetter axis, double angle);
Gate make_free_phase(double dt, std::vector<double> frequencies);

/// exp[-i theta (cos phi S_x + sin phi S_y)^2 / 4], S_a = sum_j sigma^a_j.
SparseOperator ms_gate(double theta, double phi,
                       const std::vector<std::size_t>& qubits,
                       const HilbertSpace& space);

/// exp[-phi sigma^axis_qubit (x) sum_k (c_k a^dag_k - conj(c_k) a_k)].
SparseOperator cond_disp(PauliLetter axis, std::size_t qubit, double phi,
                         const std::vector<cplx>& coefficients,
                         const HilbertSpace& space);

struct StringCompileOptions {
  /// Realize the central field-coupled gate on sigma^y (the hardware axis)
  /// and reach every other letter through local rotations.
  bool native = false;
};

/// Gate list whose product equals exp[phi P (x) sum_k (c_k a^dag_k - conj(c_k)
/// a_k)] exactly. Multi-qubit strings use MS(pi/2,0), a single conditional
/// displacement and MS(-pi/2,0), with local Clifford rotations around them.
/// Gates are listed in application order.
std::vector<Gate> compile_string_exponential(const PauliString& string,
                                             double phi,
                                             const std::vector<cplx>& coefficients,
                                             const StringCompileOptions& options = {});

struct TrotterOptions {
  bool use_ancilla = true;
  bool native = false;
  /// Accept terms on more than two system qubits.
  bool allow_n_mode = false;
  /// Block application order by term name.
  std::vector<std::string> order = {"II", "Iz", "zI", "xx-yy", "yx+xy"};
};

/// Gates of one first-order step with the coefficients frozen at t_mid.
class TrotterPlan {
 public:
  TrotterPlan() = default;
  TrotterPlan(std::vector<Gate> gates, double t_mid, double dt,
              std::vector<HamiltonianTerm> terms);

  const std::vector<Gate>& gates() const { return gates_; }
  double t_mid() const { return t_mid_; }
  double dt() const { return dt_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  std::size_t entangling_count() const;

  SparseOperator unitary(const HilbertSpace& space,
                         const ExpmOptions& options = {}) const;
  StateVector apply(const StateVector& state,
                    const ExpmOptions& options = {}) const;
  std::string to_text() const;

 private:
  std::vector<Gate> gates_;
  double t_mid_ = 0.0;
  double dt_ = 0.0;
  std::vector<HamiltonianTerm> terms_;
};

/// Step built from an arbitrary Pauli-form term list on `n_system_qubits`
/// qubits; the ancilla, when used, is qubit n_system_qubits.
TrotterPlan compile_terms(const std::vector<HamiltonianTerm>& terms,
                          const std::vector<double>& frequencies,
                          std::size_t n_system_qubits, double t_mid, double dt,
                          const TrotterOptions& options = {});

/// Step for the two-mode model: the Pauli blocks at t_mid, then the free
/// boson phases for dt.
TrotterPlan compile_trotter_step(const FieldModel& model, double t_mid, double dt,
                                 const TrotterOptions& options = {});

}  // namespace cqft
