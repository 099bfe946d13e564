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

#include "cqft/encoding.hpp"
#include "support.hpp"

using namespace cqft;
using namespace cqft::testing;

namespace {

/// |a><b| on two qubits from letters '0' (up) and '1' (down).
CMatrix ket_bra(int a, int b) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(a, b) = 1.0;
  return m;
}

constexpr int kUU = 0;
constexpr int kUD = 1;
constexpr int kDU = 2;
constexpr int kDD = 3;

CMatrix mode(Species s, int index, bool dagger, std::size_t n) {
  return to_matrix(jw_n_mode({s, index, dagger}, n));
}

CMatrix anti(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

}  // namespace

TEST_CASE("encoding: two-mode table matches the explicit projectors") {
  const CMatrix bdag = to_matrix(jw_two_mode({Species::Fermion, 1, true}));
  const CMatrix b = to_matrix(jw_two_mode({Species::Fermion, 1, false}));
  const CMatrix ddag = to_matrix(jw_two_mode({Species::Antifermion, 1, true}));
  const CMatrix d = to_matrix(jw_two_mode({Species::Antifermion, 1, false}));
  CHECK(max_diff(bdag, ket_bra(kUD, kUU) + ket_bra(kDD, kDU)) == 0.0);
  CHECK(max_diff(b, ket_bra(kUU, kUD) + ket_bra(kDU, kDD)) == 0.0);
  CHECK(max_diff(ddag, ket_bra(kDU, kUU) - ket_bra(kDD, kUD)) == 0.0);
  CHECK(max_diff(d, ket_bra(kUU, kDU) - ket_bra(kUD, kDD)) == 0.0);
  CHECK_THROWS_AS(jw_two_mode({Species::Fermion, 2, true}), std::invalid_argument);
}

TEST_CASE("encoding: two-mode map agrees with the N-mode map at N = 2") {
  for (auto s : {Species::Fermion, Species::Antifermion}) {
    for (bool dag : {false, true}) {
      const int idx = s == Species::Fermion ? 1 : 2;
      CHECK(max_diff(to_matrix(jw_two_mode({s, 1, dag})), mode(s, idx, dag, 2)) == 0.0);
    }
  }
}

TEST_CASE("encoding: canonical anticommutation relations") {
  for (std::size_t n : {2u, 4u, 6u}) {
    CAPTURE(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    const CMatrix id = CMatrix::Identity(dim, dim);
    std::vector<CMatrix> ann;
    std::vector<CMatrix> cre;
    for (int r = 1; r <= static_cast<int>(n); ++r) {
      const Species s = r <= static_cast<int>(n / 2) ? Species::Fermion : Species::Antifermion;
      ann.push_back(mode(s, r, false, n));
      cre.push_back(mode(s, r, true, n));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const CMatrix expected = i == j ? id : CMatrix::Zero(dim, dim);
        worst = std::max(worst, max_diff(anti(ann[i], cre[j]), expected));
        worst = std::max(worst, anti(ann[i], ann[j]).cwiseAbs().maxCoeff());
        worst = std::max(worst, anti(cre[i], cre[j]).cwiseAbs().maxCoeff());
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("encoding: N-mode index validation") {
  CHECK_THROWS_AS(jw_n_mode({Species::Fermion, 3, true}, 4), std::invalid_argument);
  CHECK_THROWS_AS(jw_n_mode({Species::Antifermion, 2, true}, 4), std::invalid_argument);
  CHECK_THROWS_AS(jw_n_mode({Species::Fermion, 1, true}, 3), std::invalid_argument);
  CHECK_NOTHROW(jw_n_mode({Species::Antifermion, 4, false}, 4));
}

TEST_CASE("encoding: encoded basis states") {
  const HilbertSpace space(3, {2, 2});
  CHECK(encoded_index(FermionState::Vacuum, space) == 0);
  const std::size_t per_qubit = space.boson_dim();
  CHECK(encoded_index(FermionState::F, space) == 2 * per_qubit);
  CHECK(encoded_index(FermionState::FBar, space) == 4 * per_qubit);
  CHECK(encoded_index(FermionState::Pair, space) == 6 * per_qubit);
  const auto pair = encode_state(FermionState::Pair, space);
  CHECK(pair.jw_sign == 1);
  CHECK(pair.state.norm() == 1.0);
  CHECK(encode_state(FermionState::F, space).jw_sign == 1);
  CHECK_THROWS_AS(encoded_index(FermionState::F, HilbertSpace(1, {2})),
                  std::invalid_argument);
}

TEST_CASE("encoding: creation operators build the encoded states") {
  const HilbertSpace space(2, {});
  const CMatrix bdag = to_matrix(jw_two_mode({Species::Fermion, 1, true}));
  const CMatrix ddag = to_matrix(jw_two_mode({Species::Antifermion, 1, true}));
  const CVector vac = encode_state(FermionState::Vacuum, space).state.amplitudes();
  for (auto [label, vec] :
       {std::pair{FermionState::F, CVector(bdag * vac)},
        std::pair{FermionState::FBar, CVector(ddag * vac)},
        std::pair{FermionState::Pair, CVector(bdag * ddag * vac)}}) {
    const auto enc = encode_state(label, space);
    CHECK((vec - static_cast<double>(enc.jw_sign) * enc.state.amplitudes()).norm() == 0.0);
  }
  // opposite ordering picks up the fermionic sign
  const CVector dbv = ddag * bdag * vac;
  CHECK((dbv + encode_state(FermionState::Pair, space).state.amplitudes()).norm() == 0.0);
}

TEST_CASE("encoding: Pauli string algebra") {
  const auto xy = PauliString::parse("xy");
  const auto yx = PauliString::parse("yx");
  const auto zz = multiply(xy, yx);
  CHECK(max_diff(to_matrix(zz), to_matrix(xy) * to_matrix(yx)) < 1e-15);
  CHECK(commutes(xy, yx));
  CHECK_FALSE(commutes(PauliString::parse("xI"), PauliString::parse("zI")));
  for (int trial = 0; trial < 30; ++trial) {
    std::string a, b;
    for (int q = 0; q < 3; ++q) {
      a += "Ixyz"[static_cast<int>(uniform(0, 4)) % 4];
      b += "Ixyz"[static_cast<int>(uniform(0, 4)) % 4];
    }
    const auto pa = PauliString::parse(a, random_cplx());
    const auto pb = PauliString::parse(b);
    CHECK(max_diff(to_matrix(multiply(pa, pb)), to_matrix(pa) * to_matrix(pb)) < 1e-14);
    const CMatrix ma = to_matrix(pa);
    const CMatrix mb = to_matrix(pb);
    const bool c = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
    CHECK(c == commutes(pa, pb));
  }
  CHECK_THROWS_AS(PauliString::parse("xq"), std::invalid_argument);
  CHECK_THROWS_AS(multiply(PauliString::parse("x+"), xy), std::invalid_argument);
  CHECK(PauliString::parse("IzIx").support() == std::vector<std::size_t>{1, 3});
}

TEST_CASE("encoding: strings embed on the leading qubits") {
  const HilbertSpace space(3, {1});
  const auto op = to_operator(PauliString::parse("xz"), space);
  const CMatrix expected =
      kron(kron(kron(sigma('x'), sigma('z')), sigma('i')), CMatrix::Identity(2, 2));
  CHECK(max_diff(op.dense(), expected) == 0.0);
  CHECK_THROWS_AS(to_operator(PauliString::parse("xxxx"), space), std::invalid_argument);
}

TEST_CASE("encoding: comoving modes inherit the envelope normalization") {
  // Three momentum modes per species; b_in^dag = sum_p sqrt(w_p) Omega(p) b_p^dag.
  const std::size_t n = 6;
  const std::vector<double> w{0.5, 0.5, 0.5};
  const std::vector<cplx> omega{0.3, cplx(0.8, 0.2), 0.4};
  double norm = 0.0;
  for (std::size_t i = 0; i < 3; ++i) norm += w[i] * std::norm(omega[i]);
  const Eigen::Index dim = 64;
  CMatrix b_in = CMatrix::Zero(dim, dim);
  CMatrix d_in = CMatrix::Zero(dim, dim);
  for (int r = 1; r <= 3; ++r) {
    const auto i = static_cast<std::size_t>(r - 1);
    b_in += std::sqrt(w[i]) * std::conj(omega[i]) * mode(Species::Fermion, r, false, n);
    d_in += std::sqrt(w[i]) * std::conj(omega[i]) * mode(Species::Antifermion, r + 3, false, n);
  }
  const CMatrix id = CMatrix::Identity(dim, dim);
  CHECK(max_diff(anti(b_in, b_in.adjoint()), norm * id) < 1e-13);
  CHECK(max_diff(anti(d_in, d_in.adjoint()), norm * id) < 1e-13);
  CHECK(anti(b_in, d_in.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}
