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

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cqft/encoding.hpp"
#include "cqft/fields.hpp"
#include "cqft/hilbert.hpp"

namespace cqft {

/// Plain parameter set from which a FieldModel is built.
struct ModelParams {
  double fermion_mass = 1.0;

  double k_min = 0.5;
  double k_max = 2.5;
  std::size_t n_k = 3;
  int n_max = 2;

  double p_min = -3.5;
  double p_max = 3.5;
  std::size_t n_p = 140;

  double p_f = 1.0;
  double p_fbar = -1.0;
  double sigma_p = 0.5;

  /// lambda_k: a constant, or a table with one entry per boson mode.
  double coupling = 0.1;
  std::vector<double> coupling_table;

  HardwareKind hardware = HardwareKind::Transmon;
  std::vector<double> qubit_positions = {0.0, 0.0, 0.0};

  /// Spatial grid; x_half_width <= 0 means "8 packet widths plus x_margin".
  double x_half_width = 0.0;
  double x_margin = 3.0;
  double x_step = 0.1;
};

/**
 * Discretized one-fermion/one-antifermion model coupled to a band of bosons.
 *
 * Holds the grids, envelopes and coupling profile, plus precomputed plane
 * wave tables so that lambda1/lambda2 and the spatial integrals against
 * e^{-ikx} can be evaluated quickly at any time.
 */
class FieldModel {
 public:
  FieldModel(Dispersion dispersion, MomentumGrid boson_grid, Envelope fermion,
             Envelope antifermion, CouplingProfile coupling, SpatialGrid x_grid,
             HardwareKind hardware, std::vector<double> qubit_positions,
             int n_max);

  static FieldModel from_params(const ModelParams& params);

  const Dispersion& dispersion() const { return dispersion_; }
  const MomentumGrid& boson_grid() const { return boson_grid_; }
  const Envelope& fermion_envelope() const { return fermion_; }
  const Envelope& antifermion_envelope() const { return antifermion_; }
  const CouplingProfile& coupling() const { return coupling_; }
  const SpatialGrid& x_grid() const { return x_grid_; }
  HardwareKind hardware() const { return hardware_; }
  const std::vector<double>& qubit_positions() const { return positions_; }
  int n_max() const { return n_max_; }
  std::size_t n_modes() const { return boson_grid_.size(); }

  double omega(std::size_t mode) const;
  /// effective_coupling(k) * sqrt(dk): the prefactor of each discrete mode.
  double mode_coupling(std::size_t mode) const;

  /// 2 system qubits (+1 ancilla as the last qubit) and n_k modes.
  HilbertSpace space(bool with_ancilla) const;

  /// lambda1 and lambda2 sampled on the spatial grid at time t.
  std::pair<CVector, CVector> packet_fields(double t) const;

  /// int dx f(x) e^{-ikx} and int dx f(x) e^{+ikx} for every mode; f is
  /// sampled on the spatial grid.
  std::pair<CVector, CVector> mode_integrals(const CVector& f) const;

 private:
  Dispersion dispersion_;
  MomentumGrid boson_grid_;
  Envelope fermion_;
  Envelope antifermion_;
  CouplingProfile coupling_;
  SpatialGrid x_grid_;
  HardwareKind hardware_;
  std::vector<double> positions_;
  int n_max_;
  std::shared_ptr<const PacketEvaluator> fermion_eval_;
  std::shared_ptr<const PacketEvaluator> antifermion_eval_;
  CMatrix phases_;  // rows modes, cols x: w_x e^{-i k x}
};

/**
 * One block of the interaction Hamiltonian:
 *
 *   qubits (x) i sum_k (creation_k a^dag_k - annihilation_k a_k)
 *
 * `qubits` acts on the two system qubits. Pauli-form terms also list the
 * strings whose sum equals `qubits`.
 */
struct HamiltonianTerm {
  std::string name;
  CMatrix qubits;
  std::vector<PauliString> paulis;
  std::vector<cplx> creation;
  std::vector<cplx> annihilation;

  bool is_zero() const;
};

/// i sum_k (u_k a^dag_k - v_k a_k) on a boson-only space.
SparseMatrix boson_generator(const HilbertSpace& boson_space,
                             const std::vector<cplx>& creation,
                             const std::vector<cplx>& annihilation);

SparseOperator term_operator(const HamiltonianTerm& term,
                             const HilbertSpace& space);
SparseOperator assemble(const std::vector<HamiltonianTerm>& terms,
                        const HilbertSpace& space);

enum class SpatialMode { General, Symmetric };

struct DisplacementIntegral {
  cplx creation;      // int dx f(x) e^{-ikx}
  cplx annihilation;  // int dx f(x) e^{+ikx}
};

/// Full complex quadrature of f against e^{-+ikx} on the grid.
DisplacementIntegral spatial_integral_general(
    const std::function<cplx(double)>& f, double k, const SpatialGrid& grid);

/// int dx cos k(x - x_j) f(x). Requires f(x_j + u) = f(x_j - u) to 1e-8
/// (relative to max |f|) and throws std::domain_error otherwise. With that
/// symmetry the displacement reduces to (a^dag e^{-ikx_j} - a e^{ikx_j})
/// times this value.
double spatial_integral_symmetric(const std::function<double(double)>& f,
                                  double k, double x_j, const SpatialGrid& grid);

enum class FermionicOrdering { NormalOrdered, Raw };

/// Blocks b^dag b, b^dag d^dag, d b and d d^dag with their lambda bilinears.
/// NormalOrdered writes d d^dag = 1 - d^dag d and keeps the identity part as
/// its own block. Empty when the coupling profile vanishes.
std::vector<HamiltonianTerm> build_terms_fermionic(
    const FieldModel& model, double t,
    FermionicOrdering ordering = FermionicOrdering::NormalOrdered);
std::vector<HamiltonianTerm> build_terms_fermionic(
    const FieldModel& model, const CVector& lambda1, const CVector& lambda2,
    FermionicOrdering ordering = FermionicOrdering::NormalOrdered);

/// Five Pauli blocks II, Iz, zI, (xx - yy), (yx + xy). Empty when the coupling
/// profile vanishes unless keep_zero is set.
std::vector<HamiltonianTerm> build_terms_pauli(const FieldModel& model, double t,
                                               bool keep_zero = false);
std::vector<HamiltonianTerm> build_terms_pauli(const FieldModel& model,
                                               const CVector& lambda1,
                                               const CVector& lambda2,
                                               bool keep_zero = false);

/// sum_k omega_k a^dag_k a_k over the line modes of `space`.
SparseOperator build_h_free(const FieldModel& model, const HilbertSpace& space);

enum class Representation { Fermionic, Pauli };

SparseOperator build_h_int(const FieldModel& model, double t,
                           const HilbertSpace& space,
                           Representation repr = Representation::Fermionic);

struct HardwareControls {
  std::array<double, 3> beta{};
  std::array<double, 2> alpha{};
  std::array<double, 2> resonator_g{1.0, 1.0};
  std::array<double, 3> positions{};
  double omega_r = 5.0;
  double beta_max = 1.0;
  double alpha_max = 1.0;
};

/// 3 qubits, the model's line modes, and one resonator mode as the last mode.
HilbertSpace hardware_space(const FieldModel& model, int resonator_n_max);

/// sum_j sigma^y_j (x) i sum_k beta_j g_k (a^dag e^{-ikx_j} - a e^{ikx_j})
///   + sum_{j<2} alpha_j g_j sigma^y_j (x) i (b^dag - b),
/// g_k = sqrt(omega_k) sqrt(dk) (1/sqrt(omega_k) for flux qubits).
SparseOperator build_hardware_h(const FieldModel& model,
                                const HardwareControls& controls,
                                const HilbertSpace& space);

}  // namespace cqft
