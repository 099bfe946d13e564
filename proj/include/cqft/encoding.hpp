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

#include "cqft/hilbert.hpp"

namespace cqft {

enum class PauliLetter { I, X, Y, Z, Plus, Minus };

/**
 * Tensor product of single-qubit letters times a complex prefactor.
 *
 * letters[q] acts on qubit q, where qubit 0 is the leftmost tensor factor.
 * When embedded in a larger space the string occupies the first
 * letters.size() qubits and the remaining qubits see the identity.
 */
struct PauliString {
  std::vector<PauliLetter> letters;
  cplx prefactor{1.0, 0.0};

  std::size_t size() const { return letters.size(); }
  /// Qubits carrying a non-identity letter.
  std::vector<std::size_t> support() const;
  bool is_identity() const { return support().empty(); }
  /// True when every letter is one of I, X, Y, Z.
  bool is_hermitian_basis() const;

  std::string to_string() const;
  static PauliString parse(const std::string& letters, cplx prefactor = 1.0);

  bool operator==(const PauliString&) const = default;
};

/// Product of two strings over {I, X, Y, Z} letters, including the phase.
PauliString multiply(const PauliString& a, const PauliString& b);
/// True when the two {I, X, Y, Z} strings commute.
bool commutes(const PauliString& a, const PauliString& b);

/// 2^n x 2^n matrix of the string over its own qubits.
CMatrix to_matrix(const PauliString& s);
/// Embeds the string on qubits 0..size()-1 of `space`.
SparseOperator to_operator(const PauliString& s, const HilbertSpace& space);
/// Pads a qubit matrix on the leading qubits to the full qubit factor.
CMatrix pad_qubits(const CMatrix& leading, std::size_t n_total_qubits);

enum class Species { Fermion, Antifermion };

struct FermionLabel {
  Species species = Species::Fermion;
  int index = 1;
  bool dagger = false;
};

/// Two-mode table: b^dag = I (x) sigma-, b = I (x) sigma+,
/// d^dag = sigma- (x) sigma_z, d = sigma+ (x) sigma_z.
PauliString jw_two_mode(const FermionLabel& label);

/// N-mode map. Fermion indices are 1..N/2, antifermion indices N/2+1..N.
/// Mode r sits on qubit N - r with sigma_z on the qubits of modes 1..r-1.
PauliString jw_n_mode(const FermionLabel& label, std::size_t n_modes);

enum class FermionState { Vacuum, F, FBar, Pair };

std::string to_string(FermionState s);
FermionState fermion_state_from_string(const std::string& name);

struct EncodedState {
  StateVector state;
  FermionState label = FermionState::Vacuum;
  /// Sign of <encoded basis state| (b^dag)^nb (d^dag)^nd |vacuum>; +1 except
  /// where the JW string contributes a minus sign.
  int jw_sign = 1;
};

/// |0> = |up up>, |f> = |up down>, |fbar> = |down up>, |pair> = |down down>,
/// with every further qubit in |up> and all boson modes in the vacuum.
EncodedState encode_state(FermionState label, const HilbertSpace& space);

/// Flat index of the basis state that encodes `label` (other qubits up, boson
/// vacuum).
std::size_t encoded_index(FermionState label, const HilbertSpace& space);

}  // namespace cqft
