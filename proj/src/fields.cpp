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

#include "cqft/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqft {

double Dispersion::fermion_omega(double p) const {
  return std::sqrt(p * p + fermion_mass * fermion_mass);
}

double Dispersion::boson_omega(double k) const { return std::abs(k); }

// MomentumGrid

MomentumGrid::MomentumGrid(std::vector<double> points, std::vector<double> weights,
                           GridPurpose purpose)
    : points_(std::move(points)), weights_(std::move(weights)), purpose_(purpose) {
  if (points_.empty() || points_.size() != weights_.size()) {
    throw std::invalid_argument("MomentumGrid: empty grid or weight count mismatch");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(points_[i])) {
      throw std::invalid_argument("MomentumGrid: weights must be positive");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      throw std::invalid_argument("MomentumGrid: points must be strictly increasing");
    }
  }
  lo_ = points_.front() - 0.5 * weights_.front();
  hi_ = points_.back() + 0.5 * weights_.back();
}

MomentumGrid MomentumGrid::uniform(double lo, double hi, std::size_t n,
                                   GridPurpose purpose) {
  if (n == 0 || !(hi > lo)) {
    throw std::invalid_argument("MomentumGrid::uniform: need n > 0 and hi > lo");
  }
  const double h = (hi - lo) / static_cast<double>(n);
  std::vector<double> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    points[i] = lo + (static_cast<double>(i) + 0.5) * h;
  }
  MomentumGrid grid(std::move(points), std::vector<double>(n, h), purpose);
  grid.lo_ = lo;
  grid.hi_ = hi;
  return grid;
}

SpatialGrid SpatialGrid::uniform(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) {
    throw std::invalid_argument("SpatialGrid::uniform: need n >= 2 and hi > lo");
  }
  SpatialGrid grid;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  grid.points.resize(n);
  grid.weights.assign(n, h);
  for (std::size_t i = 0; i < n; ++i) {
    grid.points[i] = lo + static_cast<double>(i) * h;
  }
  grid.weights.front() = grid.weights.back() = 0.5 * h;
  return grid;
}

// Envelope

namespace {

double discrete_norm(const MomentumGrid& grid, const std::vector<cplx>& values) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s += grid.weights()[i] * std::norm(values[i]);
  }
  return s;
}

}  // namespace

Envelope::Envelope(MomentumGrid grid, std::vector<cplx> values, double center,
                   double width)
    : grid_(std::move(grid)), values_(std::move(values)), center_(center),
      width_(width) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("Envelope: table size does not match grid");
  }
  const double n = discrete_norm(grid_, values_);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Envelope: table has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : values_) v *= scale;
}

double Envelope::norm() const { return discrete_norm(grid_, values_); }

Envelope gaussian_envelope(double p0, double sigma, const MomentumGrid& grid) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_envelope: sigma <= 0");
  const double amplitude = std::pow(2.0 / (std::numbers::pi * sigma * sigma), 0.25);
  std::vector<cplx> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = (grid.points()[i] - p0) / sigma;
    values[i] = amplitude * std::exp(-u * u);
  }
  const double deficit = 1.0 - discrete_norm(grid, values);
  if (std::abs(deficit) > 1e-3) {
    throw std::invalid_argument(
        "gaussian_envelope: grid too narrow or coarse for the envelope (norm "
        "deficit " + std::to_string(deficit) + ")");
  }
  return {grid, std::move(values), p0, sigma};
}

cplx overlap(const Envelope& a, const Envelope& b) {
  if (a.grid().points() != b.grid().points()) {
    throw std::invalid_argument("overlap: envelopes live on different grids");
  }
  cplx s{};
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    s += a.grid().weights()[i] * std::conj(a.values()[i]) * b.values()[i];
  }
  return s;
}

namespace {

cplx packet_sum(const Envelope& envelope, double x, double t,
                const Dispersion& dispersion, double sign) {
  const auto& p = envelope.grid().points();
  const auto& w = envelope.grid().weights();
  cplx s{};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double omega = dispersion.fermion_omega(p[i]);
    const double phase = sign * (p[i] * x - omega * t);
    s += w[i] * envelope.values()[i] * std::polar(1.0, phase) /
         std::sqrt(2.0 * omega);
  }
  return s / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

cplx lambda1(const Envelope& envelope, double x, double t,
             const Dispersion& dispersion) {
  return packet_sum(envelope, x, t, dispersion, +1.0);
}

cplx lambda2(const Envelope& envelope, double x, double t,
             const Dispersion& dispersion) {
  return packet_sum(envelope, x, t, dispersion, -1.0);
}

// CouplingProfile

CouplingProfile CouplingProfile::from_table(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("CouplingProfile: non-finite table entry");
    }
  }
  return {CouplingKind::Table, 0.0, std::move(values)};
}

double CouplingProfile::at(std::size_t mode) const {
  if (kind == CouplingKind::Constant) return constant;
  if (mode >= table.size()) {
    throw std::out_of_range("CouplingProfile: no table entry for mode " +
                            std::to_string(mode));
  }
  return table[mode];
}

bool CouplingProfile::is_zero() const {
  if (kind == CouplingKind::Constant) return constant == 0.0;
  for (double v : table) {
    if (v != 0.0) return false;
  }
  return true;
}

std::string to_string(HardwareKind kind) {
  return kind == HardwareKind::Transmon ? "transmon" : "fluxqubit";
}

HardwareKind hardware_kind_from_string(const std::string& name) {
  if (name == "transmon") return HardwareKind::Transmon;
  if (name == "fluxqubit") return HardwareKind::FluxQubit;
  throw std::invalid_argument("unknown hardware kind '" + name +
                              "' (expected transmon or fluxqubit)");
}

double effective_coupling(double k, double lambda_k, const Dispersion& dispersion,
                          HardwareKind kind) {
  const double omega = dispersion.boson_omega(k);
  if (kind == HardwareKind::Transmon) return lambda_k * std::sqrt(omega / 2.0);
  if (omega == 0.0) {
    throw DegenerateModeError("effective_coupling: omega_k = 0 at k = " +
                              std::to_string(k) + " for a flux-qubit coupling");
  }
  return lambda_k / std::sqrt(2.0 * omega);
}

// PacketEvaluator

PacketEvaluator::PacketEvaluator(const Envelope& envelope,
                                 const Dispersion& dispersion,
                                 std::span<const double> xs) {
  const auto& p = envelope.grid().points();
  const auto& w = envelope.grid().weights();
  const auto np = static_cast<Eigen::Index>(p.size());
  const auto nx = static_cast<Eigen::Index>(xs.size());
  plane_waves_.resize(nx, np);
  weight_.resize(np);
  omega_.resize(np);
  for (Eigen::Index j = 0; j < np; ++j) {
    omega_(j) = dispersion.fermion_omega(p[static_cast<std::size_t>(j)]);
    weight_(j) = w[static_cast<std::size_t>(j)] *
                 envelope.values()[static_cast<std::size_t>(j)] /
                 std::sqrt(2.0 * omega_(j)) / std::sqrt(2.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < nx; ++i) {
      plane_waves_(i, j) =
          std::polar(1.0, p[static_cast<std::size_t>(j)] * xs[static_cast<std::size_t>(i)]);
    }
  }
}

CVector PacketEvaluator::lambda1(double t) const {
  CVector c(weight_.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    c(j) = weight_(j) * std::polar(1.0, -omega_(j) * t);
  }
  return plane_waves_ * c;
}

CVector PacketEvaluator::lambda2(double t) const {
  CVector c(weight_.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    c(j) = weight_(j) * std::polar(1.0, omega_(j) * t);
  }
  return plane_waves_.conjugate() * c;
}

}  // namespace cqft
