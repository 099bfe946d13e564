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

#include "cqft/encoding.hpp"

#include <sstream>
#include <stdexcept>

namespace cqft {

namespace {

CMatrix letter_matrix(PauliLetter l) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (l) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, -kI, kI, 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
    case PauliLetter::Plus: m << 0, 1, 0, 0; break;
    case PauliLetter::Minus: m << 0, 0, 1, 0; break;
  }
  return m;
}

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'x';
    case PauliLetter::Y: return 'y';
    case PauliLetter::Z: return 'z';
    case PauliLetter::Plus: return '+';
    case PauliLetter::Minus: return '-';
  }
  return '?';
}

// Single-letter product a*b over {I,X,Y,Z}: returns (phase, letter).
std::pair<cplx, PauliLetter> letter_product(PauliLetter a, PauliLetter b) {
  using L = PauliLetter;
  if (a == L::I) return {1.0, b};
  if (b == L::I) return {1.0, a};
  if (a == b) return {1.0, L::I};
  auto idx = [](L l) { return l == L::X ? 0 : (l == L::Y ? 1 : 2); };
  const int ia = idx(a);
  const int ib = idx(b);
  const int ic = 3 - ia - ib;
  const L c = ic == 0 ? L::X : (ic == 1 ? L::Y : L::Z);
  // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? kI : -kI, c};
}

void require_basis(const PauliString& s, const char* what) {
  if (!s.is_hermitian_basis()) {
    throw std::invalid_argument(std::string(what) +
                                ": letters must be I, x, y or z");
  }
}

}  // namespace

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    if (letters[q] != PauliLetter::I) out.push_back(q);
  }
  return out;
}

bool PauliString::is_hermitian_basis() const {
  for (auto l : letters) {
    if (l == PauliLetter::Plus || l == PauliLetter::Minus) return false;
  }
  return true;
}

std::string PauliString::to_string() const {
  std::ostringstream os;
  os << "(" << prefactor.real() << (prefactor.imag() < 0 ? "-" : "+")
     << std::abs(prefactor.imag()) << "i) ";
  for (auto l : letters) os << letter_char(l);
  return os.str();
}

PauliString PauliString::parse(const std::string& text, cplx prefactor) {
  PauliString s;
  s.prefactor = prefactor;
  for (char c : text) {
    switch (c) {
      case 'I': s.letters.push_back(PauliLetter::I); break;
      case 'x': case 'X': s.letters.push_back(PauliLetter::X); break;
      case 'y': case 'Y': s.letters.push_back(PauliLetter::Y); break;
      case 'z': case 'Z': s.letters.push_back(PauliLetter::Z); break;
      case '+': s.letters.push_back(PauliLetter::Plus); break;
      case '-': s.letters.push_back(PauliLetter::Minus); break;
      default:
        throw std::invalid_argument(std::string("PauliString::parse: bad letter '") +
                                    c + "'");
    }
  }
  return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_basis(a, "multiply");
  require_basis(b, "multiply");
  if (a.size() != b.size()) {
    throw std::invalid_argument("multiply: string lengths differ");
  }
  PauliString out;
  out.prefactor = a.prefactor * b.prefactor;
  out.letters.resize(a.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    const auto [phase, letter] = letter_product(a.letters[q], b.letters[q]);
    out.prefactor *= phase;
    out.letters[q] = letter;
  }
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_basis(a, "commutes");
  require_basis(b, "commutes");
  if (a.size() != b.size()) throw std::invalid_argument("commutes: lengths differ");
  int anti = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const auto la = a.letters[q];
    const auto lb = b.letters[q];
    if (la != PauliLetter::I && lb != PauliLetter::I && la != lb) ++anti;
  }
  return anti % 2 == 0;
}

CMatrix to_matrix(const PauliString& s) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (auto l : s.letters) {
    const CMatrix f = letter_matrix(l);
    CMatrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = m(r, c) * f;
      }
    }
    m = std::move(next);
  }
  return s.prefactor * m;
}

CMatrix pad_qubits(const CMatrix& leading, std::size_t n_total_qubits) {
  const auto full = static_cast<Eigen::Index>(std::size_t{1} << n_total_qubits);
  if (leading.rows() > full || full % leading.rows() != 0) {
    throw std::invalid_argument("pad_qubits: operator larger than qubit factor");
  }
  const Eigen::Index tail = full / leading.rows();
  CMatrix out = CMatrix::Zero(full, full);
  for (Eigen::Index r = 0; r < leading.rows(); ++r) {
    for (Eigen::Index c = 0; c < leading.cols(); ++c) {
      if (leading(r, c) == cplx{}) continue;
      for (Eigen::Index t = 0; t < tail; ++t) {
        out(r * tail + t, c * tail + t) = leading(r, c);
      }
    }
  }
  return out;
}

SparseOperator to_operator(const PauliString& s, const HilbertSpace& space) {
  if (s.size() > space.n_qubits()) {
    throw std::invalid_argument("to_operator: string longer than the qubit count");
  }
  return qubit_operator(space, pad_qubits(to_matrix(s), space.n_qubits()));
}

PauliString jw_two_mode(const FermionLabel& label) {
  if (label.index != 1) {
    throw std::invalid_argument("jw_two_mode: mode index must be 1, got " +
                                std::to_string(label.index));
  }
  const auto ladder = label.dagger ? PauliLetter::Minus : PauliLetter::Plus;
  if (label.species == Species::Fermion) {
    return {{PauliLetter::I, ladder}, 1.0};
  }
  return {{ladder, PauliLetter::Z}, 1.0};
}

PauliString jw_n_mode(const FermionLabel& label, std::size_t n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw std::invalid_argument("jw_n_mode: N must be even and >= 2");
  }
  const int half = static_cast<int>(n_modes / 2);
  const int r = label.index;
  const bool in_range = label.species == Species::Fermion
                            ? (r >= 1 && r <= half)
                            : (r > half && r <= static_cast<int>(n_modes));
  if (!in_range) {
    throw std::invalid_argument("jw_n_mode: index " + std::to_string(r) +
                                " outside the species range for N = " +
                                std::to_string(n_modes));
  }
  PauliString s;
  s.letters.assign(n_modes, PauliLetter::I);
  const std::size_t slot = n_modes - static_cast<std::size_t>(r);
  s.letters[slot] = label.dagger ? PauliLetter::Minus : PauliLetter::Plus;
  for (std::size_t q = slot + 1; q < n_modes; ++q) s.letters[q] = PauliLetter::Z;
  return s;
}

std::string to_string(FermionState s) {
  switch (s) {
    case FermionState::Vacuum: return "vacuum";
    case FermionState::F: return "f";
    case FermionState::FBar: return "fbar";
    case FermionState::Pair: return "pair";
  }
  return "?";
}

FermionState fermion_state_from_string(const std::string& name) {
  if (name == "vacuum") return FermionState::Vacuum;
  if (name == "f") return FermionState::F;
  if (name == "fbar") return FermionState::FBar;
  if (name == "pair") return FermionState::Pair;
  throw std::invalid_argument("unknown fermion state label '" + name +
                              "' (expected vacuum, f, fbar or pair)");
}

std::size_t encoded_index(FermionState label, const HilbertSpace& space) {
  if (space.n_qubits() < 2) {
    throw std::invalid_argument("encode_state: space needs at least 2 qubits");
  }
  std::vector<int> bits(space.n_qubits(), 0);
  switch (label) {
    case FermionState::Vacuum: break;
    case FermionState::F: bits[1] = 1; break;
    case FermionState::FBar: bits[0] = 1; break;
    case FermionState::Pair: bits[0] = bits[1] = 1; break;
  }
  const std::vector<int> vacuum(space.n_modes(), 0);
  return space.encode(bits, vacuum);
}

EncodedState encode_state(FermionState label, const HilbertSpace& space) {
  EncodedState out;
  out.label = label;
  out.state = StateVector::basis(space, encoded_index(label, space));

  // Sign of the JW product that creates the sector from |up up>.
  CVector vac = CVector::Zero(4);
  vac(0) = 1.0;
  const CMatrix bdag = to_matrix(jw_two_mode({Species::Fermion, 1, true}));
  const CMatrix ddag = to_matrix(jw_two_mode({Species::Antifermion, 1, true}));
  CVector created = vac;
  if (label == FermionState::Pair) {
    created = bdag * (ddag * vac);
  } else if (label == FermionState::F) {
    created = bdag * vac;
  } else if (label == FermionState::FBar) {
    created = ddag * vac;
  }
  const auto slot = static_cast<Eigen::Index>(
      label == FermionState::Vacuum ? 0
      : label == FermionState::F    ? 1
      : label == FermionState::FBar ? 2
                                    : 3);
  out.jw_sign = created(slot).real() < 0.0 ? -1 : 1;
  return out;
}

}  // namespace cqft
