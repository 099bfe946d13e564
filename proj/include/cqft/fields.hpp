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
#include <span>
#include <string>
#include <vector>

#include "cqft/hilbert.hpp"

namespace cqft {

/// Relativistic fermion dispersion and a linear (open line) boson dispersion,
/// in units hbar = c = 1.
struct Dispersion {
  double fermion_mass = 1.0;

  double fermion_omega(double p) const;
  double boson_omega(double k) const;
};

enum class GridPurpose { BosonBand, FermionIntegral };

/// Uniform midpoint grid: points lo + (i + 1/2) h with weight h each.
class MomentumGrid {
 public:
  MomentumGrid() = default;
  MomentumGrid(std::vector<double> points, std::vector<double> weights,
               GridPurpose purpose);

  static MomentumGrid uniform(double lo, double hi, std::size_t n,
                              GridPurpose purpose);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  GridPurpose purpose() const { return purpose_; }
  std::size_t size() const { return points_.size(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  GridPurpose purpose_ = GridPurpose::FermionIntegral;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Uniform trapezoid grid in position space.
struct SpatialGrid {
  std::vector<double> points;
  std::vector<double> weights;

  static SpatialGrid uniform(double lo, double hi, std::size_t n);
};

/// Momentum-space wave-packet envelope Omega(p), normalized so that
/// sum_p w_p |Omega(p)|^2 = 1.
class Envelope {
 public:
  Envelope() = default;
  /// Custom table; renormalized on the grid.
  Envelope(MomentumGrid grid, std::vector<cplx> values, double center = 0.0,
           double width = 0.0);

  const MomentumGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  double center() const { return center_; }
  double width() const { return width_; }
  double norm() const;

 private:
  MomentumGrid grid_;
  std::vector<cplx> values_;
  double center_ = 0.0;
  double width_ = 0.0;
};

/// Omega(p) ~ exp(-((p - p0) / sigma)^2), i.e. sigma is the 1/e half-width of
/// the amplitude. Throws std::invalid_argument when sigma <= 0 or when the
/// grid loses more than 1e-3 of the continuum norm.
Envelope gaussian_envelope(double p0, double sigma, const MomentumGrid& grid);

/// sum_p w_p conj(a(p)) b(p); both envelopes must share a grid.
cplx overlap(const Envelope& a, const Envelope& b);

/// (1/sqrt(2 pi)) int dp Omega(p) e^{i(p x - w_p t)} / sqrt(2 w_p)
cplx lambda1(const Envelope& envelope, double x, double t,
             const Dispersion& dispersion);
/// Same with the conjugate phase e^{-i(p x - w_p t)}.
cplx lambda2(const Envelope& envelope, double x, double t,
             const Dispersion& dispersion);

enum class CouplingKind { Constant, Table };

/// lambda_k on the boson grid.
struct CouplingProfile {
  CouplingKind kind = CouplingKind::Constant;
  double constant = 0.0;
  std::vector<double> table;

  static CouplingProfile uniform(double value) {
    return {CouplingKind::Constant, value, {}};
  }
  static CouplingProfile from_table(std::vector<double> values);

  double at(std::size_t mode) const;
  bool is_zero() const;
};

enum class HardwareKind { Transmon, FluxQubit };

std::string to_string(HardwareKind kind);
HardwareKind hardware_kind_from_string(const std::string& name);

/// Raised for a boson mode with omega_k = 0 where 1/sqrt(omega_k) is needed.
struct DegenerateModeError : std::domain_error {
  using std::domain_error::domain_error;
};

/// lambda_k sqrt(omega_k / 2) for transmons, lambda_k / sqrt(2 omega_k) for
/// flux qubits.
double effective_coupling(double k, double lambda_k,
                          const Dispersion& dispersion, HardwareKind kind);

/// Precomputed plane-wave table for evaluating lambda1/lambda2 on a whole
/// spatial grid at once.
class PacketEvaluator {
 public:
  PacketEvaluator(const Envelope& envelope, const Dispersion& dispersion,
                  std::span<const double> xs);

  /// lambda1(x_i, t) for every grid point.
  CVector lambda1(double t) const;
  /// lambda2(x_i, t) for every grid point.
  CVector lambda2(double t) const;

 private:
  CMatrix plane_waves_;  // e^{i p x}, rows x, cols p
  CVector weight_;       // w_p Omega(p) / sqrt(2 w_p) / sqrt(2 pi)
  Eigen::VectorXd omega_;
};

}  // namespace cqft
