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

#include "cqft/model.hpp"
#include "support.hpp"

using namespace cqft;
using namespace cqft::testing;

namespace {

FieldModel make_model(std::size_t n_k, double coupling = 0.3) {
  ModelParams p;
  p.n_k = n_k;
  p.n_max = 2;
  p.coupling = coupling;
  return FieldModel::from_params(p);
}

/// Dense truncated-field Hamiltonian: psi = L1 b + L2 d^dag, density psi^dag psi,
/// coupled to i sum_k g_k (e^{-ikx} a_k^dag - e^{ikx} a_k).
CMatrix h_int_oracle(const FieldModel& m, double t) {
  const CMatrix b = kron(sigma('i'), sigma('+'));
  const CMatrix ddag = kron(sigma('-'), sigma('z'));
  const auto& xs = m.x_grid();
  const std::size_t nk = m.n_modes();
  std::vector<CMatrix> cre(nk, CMatrix::Zero(4, 4));
  std::vector<CMatrix> ann(nk, CMatrix::Zero(4, 4));
  for (std::size_t i = 0; i < xs.points.size(); ++i) {
    const double x = xs.points[i];
    const cplx l1 = lambda1(m.fermion_envelope(), x, t, m.dispersion());
    const cplx l2 = lambda2(m.antifermion_envelope(), x, t, m.dispersion());
    const CMatrix psi = l1 * b + l2 * ddag;
    const CMatrix density = psi.adjoint() * psi;
    for (std::size_t k = 0; k < nk; ++k) {
      const double kk = m.boson_grid().points()[k];
      cre[k] += xs.weights[i] * std::polar(1.0, -kk * x) * density;
      ann[k] += xs.weights[i] * std::polar(1.0, kk * x) * density;
    }
  }
  const int levels = m.n_max() + 1;
  const auto bdim = static_cast<Eigen::Index>(std::pow(levels, static_cast<double>(nk)));
  CMatrix h = CMatrix::Zero(4 * bdim, 4 * bdim);
  for (std::size_t k = 0; k < nk; ++k) {
    CMatrix a = CMatrix::Identity(1, 1);
    for (std::size_t j = 0; j < nk; ++j) {
      a = kron(a, j == k ? annihilation(m.n_max()) : CMatrix::Identity(levels, levels));
    }
    const double g = m.mode_coupling(k);
    h += kI * g * (kron(cre[k], a.adjoint()) - kron(ann[k], a));
  }
  return h;
}

double max_coeff(const HamiltonianTerm& t) {
  double m = 0.0;
  for (auto c : t.creation) m = std::max(m, std::abs(c));
  for (auto c : t.annihilation) m = std::max(m, std::abs(c));
  return m;
}

const HamiltonianTerm& find(const std::vector<HamiltonianTerm>& terms,
                            const std::string& name) {
  for (const auto& t : terms) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("missing term " + name);
}

}  // namespace

TEST_CASE("model: spatial integral of a narrow bump is its mass") {
  const auto grid = SpatialGrid::uniform(-2.0, 2.0, 4001);
  const double w = 0.02;
  const double xj = 0.4;
  auto bump = [&](double x) {
    const double u = (x - xj) / w;
    return std::exp(-u * u) / (w * std::sqrt(std::numbers::pi));
  };
  for (double k : {0.5, 1.3, 2.5}) {
    CHECK(std::abs(spatial_integral_symmetric(bump, k, xj, grid) - 1.0) < 2e-3);
  }
}

TEST_CASE("model: symmetric and general spatial integrals agree") {
  const auto grid = SpatialGrid::uniform(-20.0, 20.0, 2001);
  const double xj = 0.5;
  auto f = [&](double x) { return std::exp(-(x - xj) * (x - xj) / 3.0); };
  for (double k : {0.3, 1.0, 2.2}) {
    const auto gen = spatial_integral_general([&](double x) { return cplx(f(x)); }, k, grid);
    const double sym = spatial_integral_symmetric(f, k, xj, grid);
    CHECK(std::abs(gen.creation - std::polar(1.0, -k * xj) * sym) < 1e-8);
    CHECK(std::abs(gen.annihilation - std::polar(1.0, k * xj) * sym) < 1e-8);
  }
}

TEST_CASE("model: windowed cosine peaks at its wave number") {
  const auto grid = SpatialGrid::uniform(-30.0, 30.0, 3001);
  const double k0 = 1.4;
  auto f = [&](double x) { return std::cos(k0 * x) * std::exp(-(x / 8.0) * (x / 8.0)); };
  double best_k = 0.0;
  double best = -1.0;
  for (int i = 0; i <= 40; ++i) {
    const double k = 0.5 + 0.05 * i;
    const double v = spatial_integral_symmetric(f, k, 0.0, grid);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  CHECK(std::abs(best_k - k0) < 0.025);
}

TEST_CASE("model: asymmetric profiles are rejected by the symmetric path") {
  const auto grid = SpatialGrid::uniform(-5.0, 5.0, 101);
  auto f = [](double x) { return std::exp(-(x - 0.3) * (x - 0.3)); };
  CHECK_THROWS_AS(spatial_integral_symmetric(f, 1.0, 0.0, grid), std::domain_error);
}

TEST_CASE("model: zero coupling gives no terms") {
  const auto m = make_model(2, 0.0);
  CHECK(build_terms_fermionic(m, 0.3).empty());
  CHECK(build_terms_pauli(m, 0.3).empty());
  CHECK(build_terms_pauli(m, 0.3, true).size() == 5);
  CHECK(build_h_int(m, 0.3, m.space(false)).max_abs() == 0.0);
}

TEST_CASE("model: interaction Hamiltonian is Hermitian") {
  const auto m = make_model(3);
  const auto space = m.space(true);
  for (int i = 0; i < 10; ++i) {
    const double t = uniform(0.0, 5.0);
    CHECK(build_h_int(m, t, space).is_hermitian(1e-12));
    CHECK(build_h_int(m, t, space, Representation::Pauli).is_hermitian(1e-12));
  }
}

TEST_CASE("model: fermionic build matches the truncated-field oracle") {
  const auto m = make_model(2);
  const auto space = m.space(false);
  for (double t : {0.0, 0.7, 2.1}) {
    const CMatrix oracle = h_int_oracle(m, t);
    const CMatrix raw =
        assemble(build_terms_fermionic(m, t, FermionicOrdering::Raw), space).dense();
    const CMatrix normal = build_h_int(m, t, space).dense();
    CHECK(max_diff(raw, oracle) < 1e-12);
    CHECK(max_diff(normal, oracle) < 1e-12);
  }
}

TEST_CASE("model: Pauli decomposition equals the fermionic form") {
  for (std::size_t nk : {2u, 4u}) {
    const auto m = make_model(nk);
    const auto space = m.space(false);
    for (int i = 0; i < 10; ++i) {
      const double t = uniform(0.0, 5.0);
      const auto f = build_h_int(m, t, space, Representation::Fermionic);
      const auto p = build_h_int(m, t, space, Representation::Pauli);
      CHECK(max_abs_diff(f, p) < 1e-10);
    }
  }
}

TEST_CASE("model: Pauli blocks list their strings") {
  const auto terms = build_terms_pauli(make_model(2), 0.5);
  REQUIRE(terms.size() == 5);
  for (const auto& t : terms) {
    CMatrix sum = CMatrix::Zero(4, 4);
    for (const auto& s : t.paulis) sum += to_matrix(s);
    CHECK(max_diff(sum, t.qubits) == 0.0);
  }
}

TEST_CASE("model: conjugate pair-creation and annihilation coefficients") {
  const auto m = make_model(3);
  for (double t : {0.0, 1.2}) {
    const auto terms = build_terms_fermionic(m, t);
    const auto& bd = find(terms, "b+d+");
    const auto& db = find(terms, "db");
    for (std::size_t k = 0; k < m.n_modes(); ++k) {
      CHECK(std::abs(db.creation[k] - std::conj(bd.annihilation[k])) < 1e-14);
      CHECK(std::abs(db.annihilation[k] - std::conj(bd.creation[k])) < 1e-14);
    }
  }
  // Mirrored packets at t = 0 have lambda1 = lambda2, so both blocks coincide.
  const auto terms = build_terms_fermionic(m, 0.0);
  const auto& bd = find(terms, "b+d+");
  const auto& db = find(terms, "db");
  for (std::size_t k = 0; k < m.n_modes(); ++k) {
    CHECK(std::abs(db.creation[k] - bd.creation[k]) < 1e-14);
  }
}

TEST_CASE("model: real cross density empties the yx+xy block") {
  const auto m = make_model(3);
  const auto terms = build_terms_pauli(m, 0.0);
  CHECK(max_coeff(find(terms, "yx+xy")) < 1e-15);
  CHECK(max_coeff(find(terms, "xx-yy")) > 1e-4);
}

TEST_CASE("model: a missing antifermion field leaves only II and Iz") {
  const auto m = make_model(3);
  const auto [l1, l2] = m.packet_fields(0.4);
  const CVector zero = CVector::Zero(l2.size());
  const auto terms = build_terms_pauli(m, l1, zero);
  CHECK(max_coeff(find(terms, "II")) > 1e-4);
  CHECK(max_coeff(find(terms, "Iz")) > 1e-4);
  CHECK(max_coeff(find(terms, "zI")) == 0.0);
  CHECK(max_coeff(find(terms, "xx-yy")) == 0.0);
  CHECK(max_coeff(find(terms, "yx+xy")) == 0.0);
  CHECK_THROWS_AS(build_terms_pauli(m, l1, CVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("model: free boson Hamiltonian") {
  const auto m = make_model(3);
  const auto space = m.space(false);
  const auto h = build_h_free(m, space);
  const auto vac = StateVector::basis(space, 0);
  CHECK(std::abs(vac.inner(apply(h, vac))) == 0.0);
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<int> occ(3, 0);
    occ[k] = 1;
    const std::vector<int> q{0, 0};
    const auto s = StateVector::basis(space, space.encode(q, occ));
    const auto hs = apply(h, s);
    CHECK((hs.amplitudes() - m.omega(k) * s.amplitudes()).norm() < 1e-15);
  }
  SparseOperator n = SparseOperator::zero(space);
  for (std::size_t k = 0; k < 3; ++k) n += boson_op(space, k, BosonKind::Number);
  CHECK(commutator(h, n).max_abs() == 0.0);
}

TEST_CASE("model: transmon coefficients absorb sqrt(omega_k)") {
  const auto m = make_model(4);
  const auto terms = build_terms_fermionic(m, 0.0);
  const auto& bb = find(terms, "b+b");
  auto density = [&](double x) {
    return std::norm(lambda1(m.fermion_envelope(), x, 0.0, m.dispersion()));
  };
  std::vector<double> ratio;
  for (std::size_t k = 0; k < m.n_modes(); ++k) {
    const double kk = m.boson_grid().points()[k];
    const double integral = spatial_integral_symmetric(density, kk, 0.0, m.x_grid());
    const double lam = m.coupling().at(k);
    ratio.push_back((bb.creation[k] / (lam * integral * std::sqrt(m.omega(k)))).real());
    CHECK(std::abs(bb.creation[k].imag()) < 1e-14);
  }
  for (double r : ratio) CHECK(r == doctest::Approx(ratio.front()).epsilon(1e-10));
}

TEST_CASE("model: hardware Hamiltonian") {
  const auto m = make_model(2);
  const auto space = hardware_space(m, 2);
  HardwareControls c;
  CHECK(build_hardware_h(m, c, space).max_abs() == 0.0);
  c.beta = {0.3, 0.7, 0.1};
  c.alpha = {0.2, 0.9};
  c.positions = {-1.0, 0.0, 2.0};
  CHECK(build_hardware_h(m, c, space).is_hermitian(1e-14));
  c.beta[1] = 1.5;
  CHECK_THROWS_AS(build_hardware_h(m, c, space), std::invalid_argument);
  CHECK_THROWS_AS(build_hardware_h(m, HardwareControls{}, m.space(true)),
                  std::invalid_argument);
}

TEST_CASE("model: hardware Hamiltonian for one qubit and one mode by hand") {
  ModelParams p;
  p.n_k = 1;
  p.n_max = 3;
  const auto m = FieldModel::from_params(p);
  const auto space = hardware_space(m, 1);
  HardwareControls c;
  c.beta = {0.4, 0.0, 0.0};
  c.positions = {0.7, 0.0, 0.0};
  const double k = m.boson_grid().points()[0];
  const double g = std::sqrt(m.omega(0)) * std::sqrt(m.boson_grid().weights()[0]);
  const CMatrix a = annihilation(3);
  const CMatrix field = kI * 0.4 * g *
                        (std::polar(1.0, -k * 0.7) * a.adjoint() - std::polar(1.0, k * 0.7) * a);
  const CMatrix expected = kron(kron(kron(kron(sigma('y'), sigma('i')), sigma('i')), field),
                                CMatrix::Identity(2, 2));
  CHECK(max_diff(build_hardware_h(m, c, space).dense(), expected) < 1e-15);
}

TEST_CASE("model: construction errors") {
  ModelParams p;
  p.coupling_table = {0.1, 0.2};
  CHECK_THROWS_AS(FieldModel::from_params(p), std::invalid_argument);
  ModelParams q;
  q.n_max = 0;
  CHECK_THROWS_AS(FieldModel::from_params(q), std::invalid_argument);
}
