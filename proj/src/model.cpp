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

#include "cqft/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqft {

// FieldModel

FieldModel::FieldModel(Dispersion dispersion, MomentumGrid boson_grid,
                       Envelope fermion, Envelope antifermion,
                       CouplingProfile coupling, SpatialGrid x_grid,
                       HardwareKind hardware, std::vector<double> qubit_positions,
                       int n_max)
    : dispersion_(dispersion), boson_grid_(std::move(boson_grid)),
      fermion_(std::move(fermion)), antifermion_(std::move(antifermion)),
      coupling_(std::move(coupling)), x_grid_(std::move(x_grid)),
      hardware_(hardware), positions_(std::move(qubit_positions)), n_max_(n_max) {
  if (boson_grid_.purpose() != GridPurpose::BosonBand) {
    throw std::invalid_argument("FieldModel: boson grid must be tagged boson-band");
  }
  if (fermion_.grid().points() != antifermion_.grid().points()) {
    throw std::invalid_argument("FieldModel: envelopes must share one fermion grid");
  }
  if (coupling_.kind == CouplingKind::Table &&
      coupling_.table.size() != boson_grid_.size()) {
    throw std::invalid_argument("FieldModel: coupling table needs one value per mode");
  }
  if (n_max_ < 1) throw std::invalid_argument("FieldModel: n_max must be >= 1");
  if (x_grid_.points.size() < 2) {
    throw std::invalid_argument("FieldModel: spatial grid too small");
  }
  for (std::size_t i = 0; i < boson_grid_.size(); ++i) {
    if (dispersion_.boson_omega(boson_grid_.points()[i]) < 0.0) {
      throw std::invalid_argument("FieldModel: negative boson frequency");
    }
  }

  fermion_eval_ = std::make_shared<PacketEvaluator>(fermion_, dispersion_,
                                                    x_grid_.points);
  antifermion_eval_ = std::make_shared<PacketEvaluator>(antifermion_, dispersion_,
                                                        x_grid_.points);
  const auto nk = static_cast<Eigen::Index>(boson_grid_.size());
  const auto nx = static_cast<Eigen::Index>(x_grid_.points.size());
  phases_.resize(nk, nx);
  for (Eigen::Index k = 0; k < nk; ++k) {
    const double kk = boson_grid_.points()[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < nx; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      phases_(k, i) = x_grid_.weights[ui] * std::polar(1.0, -kk * x_grid_.points[ui]);
    }
  }
}

FieldModel FieldModel::from_params(const ModelParams& p) {
  Dispersion dispersion{p.fermion_mass};
  auto boson = MomentumGrid::uniform(p.k_min, p.k_max, p.n_k, GridPurpose::BosonBand);
  auto fermion_grid =
      MomentumGrid::uniform(p.p_min, p.p_max, p.n_p, GridPurpose::FermionIntegral);
  auto f = gaussian_envelope(p.p_f, p.sigma_p, fermion_grid);
  auto fbar = gaussian_envelope(p.p_fbar, p.sigma_p, fermion_grid);
  CouplingProfile coupling = p.coupling_table.empty()
                                 ? CouplingProfile::uniform(p.coupling)
                                 : CouplingProfile::from_table(p.coupling_table);
  double half = p.x_half_width;
  if (half <= 0.0) half = 8.0 * (2.0 / p.sigma_p) + p.x_margin;
  const auto n_x = static_cast<std::size_t>(std::ceil(2.0 * half / p.x_step)) + 1;
  return {dispersion, std::move(boson), std::move(f), std::move(fbar),
          std::move(coupling), SpatialGrid::uniform(-half, half, n_x),
          p.hardware, p.qubit_positions, p.n_max};
}

double FieldModel::omega(std::size_t mode) const {
  return dispersion_.boson_omega(boson_grid_.points().at(mode));
}

double FieldModel::mode_coupling(std::size_t mode) const {
  const double k = boson_grid_.points().at(mode);
  return effective_coupling(k, coupling_.at(mode), dispersion_, hardware_) *
         std::sqrt(boson_grid_.weights()[mode]);
}

HilbertSpace FieldModel::space(bool with_ancilla) const {
  return {with_ancilla ? 3u : 2u, std::vector<int>(n_modes(), n_max_)};
}

std::pair<CVector, CVector> FieldModel::packet_fields(double t) const {
  return {fermion_eval_->lambda1(t), antifermion_eval_->lambda2(t)};
}

std::pair<CVector, CVector> FieldModel::mode_integrals(const CVector& f) const {
  if (f.size() != phases_.cols()) {
    throw std::invalid_argument("mode_integrals: samples do not match the grid");
  }
  CVector minus = phases_ * f;
  CVector plus = phases_.conjugate() * f;
  return {std::move(minus), std::move(plus)};
}

// Terms

bool HamiltonianTerm::is_zero() const {
  auto zero = [](const std::vector<cplx>& v) {
    return std::all_of(v.begin(), v.end(), [](cplx c) { return c == cplx{}; });
  };
  return zero(creation) && zero(annihilation);
}

SparseMatrix boson_generator(const HilbertSpace& boson_space,
                             const std::vector<cplx>& creation,
                             const std::vector<cplx>& annihilation) {
  if (boson_space.n_qubits() != 0 || creation.size() != boson_space.n_modes() ||
      annihilation.size() != boson_space.n_modes()) {
    throw std::invalid_argument("boson_generator: coefficient/mode mismatch");
  }
  SparseOperator g = SparseOperator::zero(boson_space);
  for (std::size_t k = 0; k < creation.size(); ++k) {
    if (creation[k] != cplx{}) {
      g += (kI * creation[k]) * boson_op(boson_space, k, BosonKind::Create);
    }
    if (annihilation[k] != cplx{}) {
      g -= (kI * annihilation[k]) * boson_op(boson_space, k, BosonKind::Annihilate);
    }
  }
  return g.matrix();
}

SparseOperator term_operator(const HamiltonianTerm& term,
                             const HilbertSpace& space) {
  const auto bosons =
      boson_generator(space.boson_factor(), term.creation, term.annihilation);
  return qubit_boson_product(space, pad_qubits(term.qubits, space.n_qubits()),
                             bosons);
}

SparseOperator assemble(const std::vector<HamiltonianTerm>& terms,
                        const HilbertSpace& space) {
  SparseOperator h = SparseOperator::zero(space);
  for (const auto& t : terms) h += term_operator(t, space);
  return h;
}

DisplacementIntegral spatial_integral_general(const std::function<cplx(double)>& f,
                                              double k, const SpatialGrid& grid) {
  DisplacementIntegral out{};
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double x = grid.points[i];
    const cplx v = grid.weights[i] * f(x);
    out.creation += v * std::polar(1.0, -k * x);
    out.annihilation += v * std::polar(1.0, k * x);
  }
  return out;
}

double spatial_integral_symmetric(const std::function<double(double)>& f,
                                  double k, double x_j, const SpatialGrid& grid) {
  double scale = 0.0;
  double asym = 0.0;
  for (double x : grid.points) {
    const double a = f(x);
    const double b = f(2.0 * x_j - x);
    scale = std::max(scale, std::abs(a));
    asym = std::max(asym, std::abs(a - b));
  }
  if (asym > 1e-8 * std::max(scale, 1e-300)) {
    throw std::domain_error("spatial_integral_symmetric: f is not symmetric about "
                            "x_j (max deviation " + std::to_string(asym) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double x = grid.points[i];
    s += grid.weights[i] * std::cos(k * (x - x_j)) * f(x);
  }
  return s;
}

namespace {

CMatrix jw(Species species, bool dagger) {
  return to_matrix(jw_two_mode({species, 1, dagger}));
}

HamiltonianTerm make_term(const FieldModel& model, std::string name,
                          CMatrix qubits, std::vector<PauliString> paulis,
                          const CVector& f) {
  const auto [minus, plus] = model.mode_integrals(f);
  HamiltonianTerm term{std::move(name), std::move(qubits), std::move(paulis), {}, {}};
  term.creation.resize(model.n_modes());
  term.annihilation.resize(model.n_modes());
  for (std::size_t k = 0; k < model.n_modes(); ++k) {
    const double g = model.mode_coupling(k);
    term.creation[k] = g * minus(static_cast<Eigen::Index>(k));
    term.annihilation[k] = g * plus(static_cast<Eigen::Index>(k));
  }
  return term;
}

void require_samples(const FieldModel& model, const CVector& l1, const CVector& l2) {
  const auto n = static_cast<Eigen::Index>(model.x_grid().points.size());
  if (l1.size() != n || l2.size() != n) {
    throw std::invalid_argument("packet field samples do not match the spatial grid");
  }
}

}  // namespace

std::vector<HamiltonianTerm> build_terms_fermionic(const FieldModel& model,
                                                   double t,
                                                   FermionicOrdering ordering) {
  const auto [l1, l2] = model.packet_fields(t);
  return build_terms_fermionic(model, l1, l2, ordering);
}

std::vector<HamiltonianTerm> build_terms_fermionic(const FieldModel& model,
                                                   const CVector& l1,
                                                   const CVector& l2,
                                                   FermionicOrdering ordering) {
  require_samples(model, l1, l2);
  if (model.coupling().is_zero()) return {};
  const CMatrix bdag = jw(Species::Fermion, true);
  const CMatrix b = jw(Species::Fermion, false);
  const CMatrix ddag = jw(Species::Antifermion, true);
  const CMatrix d = jw(Species::Antifermion, false);

  const CVector f_bb = l1.cwiseAbs2().cast<cplx>();
  const CVector f_bd = l1.conjugate().cwiseProduct(l2);
  const CVector f_db = l2.conjugate().cwiseProduct(l1);
  const CVector f_dd = l2.cwiseAbs2().cast<cplx>();

  std::vector<HamiltonianTerm> terms;
  terms.push_back(make_term(model, "b+b", bdag * b, {}, f_bb));
  terms.push_back(make_term(model, "b+d+", bdag * ddag, {}, f_bd));
  terms.push_back(make_term(model, "db", d * b, {}, f_db));
  if (ordering == FermionicOrdering::Raw) {
    terms.push_back(make_term(model, "dd+", d * ddag, {}, f_dd));
  } else {
    terms.push_back(make_term(model, "-d+d", -(ddag * d), {}, f_dd));
    terms.push_back(make_term(model, "1", CMatrix::Identity(4, 4), {}, f_dd));
  }
  return terms;
}

std::vector<HamiltonianTerm> build_terms_pauli(const FieldModel& model, double t,
                                               bool keep_zero) {
  const auto [l1, l2] = model.packet_fields(t);
  return build_terms_pauli(model, l1, l2, keep_zero);
}

std::vector<HamiltonianTerm> build_terms_pauli(const FieldModel& model,
                                               const CVector& l1,
                                               const CVector& l2,
                                               bool keep_zero) {
  require_samples(model, l1, l2);
  if (model.coupling().is_zero() && !keep_zero) return {};
  const Eigen::VectorXd a1 = l1.cwiseAbs2();
  const Eigen::VectorXd a2 = l2.cwiseAbs2();
  const CVector cross = l1.conjugate().cwiseProduct(l2);

  auto block = [&](std::string name, std::vector<PauliString> paulis,
                   const Eigen::VectorXd& f) {
    CMatrix q = CMatrix::Zero(4, 4);
    for (const auto& s : paulis) q += to_matrix(s);
    return make_term(model, std::move(name), std::move(q), std::move(paulis),
                     f.cast<cplx>());
  };
  using P = PauliString;
  std::vector<HamiltonianTerm> terms;
  terms.push_back(block("II", {P::parse("II")}, 0.5 * (a1 + a2)));
  terms.push_back(block("Iz", {P::parse("Iz")}, -0.5 * a1));
  terms.push_back(block("zI", {P::parse("zI")}, 0.5 * a2));
  terms.push_back(block("xx-yy", {P::parse("xx"), P::parse("yy", -1.0)},
                        0.5 * cross.real()));
  terms.push_back(block("yx+xy", {P::parse("yx"), P::parse("xy")},
                        0.5 * cross.imag()));
  return terms;
}

SparseOperator build_h_free(const FieldModel& model, const HilbertSpace& space) {
  if (space.n_modes() < model.n_modes()) {
    throw std::invalid_argument("build_h_free: space lacks the model's line modes");
  }
  SparseOperator h = SparseOperator::zero(space);
  for (std::size_t k = 0; k < model.n_modes(); ++k) {
    h += cplx(model.omega(k)) * boson_op(space, k, BosonKind::Number);
  }
  return h;
}

SparseOperator build_h_int(const FieldModel& model, double t,
                           const HilbertSpace& space, Representation repr) {
  const auto terms = repr == Representation::Fermionic
                         ? build_terms_fermionic(model, t)
                         : build_terms_pauli(model, t);
  return assemble(terms, space);
}

HilbertSpace hardware_space(const FieldModel& model, int resonator_n_max) {
  std::vector<int> levels(model.n_modes(), model.n_max());
  levels.push_back(resonator_n_max);
  return {3, std::move(levels)};
}

SparseOperator build_hardware_h(const FieldModel& model,
                                const HardwareControls& c,
                                const HilbertSpace& space) {
  if (space.n_qubits() < 3 || space.n_modes() != model.n_modes() + 1) {
    throw std::invalid_argument(
        "build_hardware_h: need 3 qubits, the line modes and one resonator mode");
  }
  for (double b : c.beta) {
    if (b < 0.0 || b > c.beta_max) {
      throw std::invalid_argument("build_hardware_h: beta outside [0, beta_max]");
    }
  }
  for (double a : c.alpha) {
    if (a < 0.0 || a > c.alpha_max) {
      throw std::invalid_argument("build_hardware_h: alpha outside [0, alpha_max]");
    }
  }
  SparseOperator h = SparseOperator::zero(space);
  for (std::size_t j = 0; j < 3; ++j) {
    if (c.beta[j] == 0.0) continue;
    SparseOperator line = SparseOperator::zero(space);
    for (std::size_t k = 0; k < model.n_modes(); ++k) {
      const double kk = model.boson_grid().points()[k];
      const double omega = model.omega(k);
      const double g = (model.hardware() == HardwareKind::Transmon
                            ? std::sqrt(omega)
                            : 1.0 / std::sqrt(omega)) *
                       std::sqrt(model.boson_grid().weights()[k]);
      const cplx e = std::polar(1.0, -kk * c.positions[j]);
      line += (c.beta[j] * g * e) * boson_op(space, k, BosonKind::Create);
      line -= (c.beta[j] * g * std::conj(e)) * boson_op(space, k, BosonKind::Annihilate);
    }
    h += kI * (pauli_op(space, j, PauliAxis::Y) * line);
  }
  const std::size_t res = model.n_modes();
  const SparseOperator field = boson_op(space, res, BosonKind::Create) -
                               boson_op(space, res, BosonKind::Annihilate);
  for (std::size_t j = 0; j < 2; ++j) {
    if (c.alpha[j] == 0.0) continue;
    h += (kI * c.alpha[j] * c.resonator_g[j]) *
         (pauli_op(space, j, PauliAxis::Y) * field);
  }
  return h;
}

}  // namespace cqft
