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

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cqft/hilbert.hpp"

namespace cqft {

namespace {

double inf_norm(const SparseMatrix& a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      rows(it.row()) += std::abs(it.value());
    }
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

void require_finite(const SparseOperator& a, cplx scale, const char* what) {
  if (!a.is_finite() || !std::isfinite(scale.real()) ||
      !std::isfinite(scale.imag())) {
    throw NumericalError(std::string(what) + ": non-finite generator");
  }
}

}  // namespace

CMatrix dense_expm(const CMatrix& a) {
  if (!a.allFinite()) throw NumericalError("dense_expm: non-finite matrix");
  CMatrix result = a.exp();
  if (!result.allFinite()) throw NumericalError("dense_expm: overflow");
  return result;
}

SparseOperator op_expm(const SparseOperator& a, cplx scale,
                       const ExpmOptions& options) {
  require_finite(a, scale, "op_expm");
  if (a.dim() > options.dense_max_dim) {
    throw std::invalid_argument(
        "op_expm: dim " + std::to_string(a.dim()) +
        " exceeds dense threshold; use expm_apply on a state instead");
  }
  if (scale == cplx{} || a.matrix().nonZeros() == 0) {
    return SparseOperator::identity(a.space());
  }
  const CMatrix e = dense_expm(scale * a.dense());
  return SparseOperator::from_dense(a.space(), e);
}

StateVector expm_apply(const SparseOperator& a, cplx scale,
                       const StateVector& state, const ExpmOptions& options) {
  require_finite(a, scale, "expm_apply");
  if (!(a.space() == state.space())) {
    throw std::invalid_argument("expm_apply: space mismatch");
  }
  const bool dense =
      options.method == ExpmMethod::Dense ||
      (options.method == ExpmMethod::Auto && a.dim() <= options.dense_max_dim);
  if (dense) {
    return apply(op_expm(a, scale, {.method = ExpmMethod::Dense,
                                    .dense_max_dim = a.dim()}),
                 state);
  }
  return {state.space(), krylov_expv(a.matrix(), scale, state.amplitudes(),
                                     options.krylov_dim, options.krylov_tol)};
}

// Arnoldi projection with the augmented-matrix error estimate of Sidje's
// Expokit. The time interval [0, 1] of exp(s A) is covered by adaptive
// sub-steps; each accepted step satisfies err <= tol * tau * beta.
CVector krylov_expv(const SparseMatrix& a, cplx scale, const CVector& v,
                    std::size_t krylov_dim, double tol) {
  const Eigen::Index n = v.size();
  if (n == 0 || v.norm() == 0.0 || scale == cplx{}) return v;
  const double anorm = inf_norm(a) * std::abs(scale);
  if (anorm == 0.0) return v;

  const Eigen::Index m =
      std::max<Eigen::Index>(1, std::min<Eigen::Index>(krylov_dim, n));
  const double breakdown_tol = 1e-14 * anorm;
  constexpr double kGamma = 0.9;

  CVector w = v;
  double t_now = 0.0;
  double tau = 1.0;
  int guard = 0;
  while (t_now < 1.0) {
    if (++guard > 100000) throw NumericalError("krylov_expv: no progress");
    const double beta = w.norm();
    if (beta == 0.0) break;

    CMatrix basis(n, m + 1);
    CMatrix h = CMatrix::Zero(m + 2, m + 2);
    basis.col(0) = w / beta;
    Eigen::Index size = m;
    bool happy = false;
    for (Eigen::Index j = 0; j < m; ++j) {
      CVector p = scale * (a * basis.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i <= j; ++i) {
          const cplx hij = basis.col(i).dot(p);
          h(i, j) += hij;
          p -= hij * basis.col(i);
        }
      }
      const double s = p.norm();
      if (s < breakdown_tol) {
        size = j + 1;
        happy = true;
        break;
      }
      h(j + 1, j) = s;
      basis.col(j + 1) = p / s;
    }

    if (happy) {
      const double remaining = 1.0 - t_now;
      const CMatrix f = dense_expm(remaining * h.topLeftCorner(size, size));
      w = beta * (basis.leftCols(size) * f.col(0));
      t_now = 1.0;
      break;
    }

    const double avnorm = (scale * (a * basis.col(m))).norm();
    h(m + 1, m) = 1.0;
    CMatrix f;
    double err = 0.0;
    for (int reject = 0;; ++reject) {
      tau = std::min(tau, 1.0 - t_now);
      f = dense_expm(tau * h);
      const double err1 = beta * std::abs(f(m, 0));
      const double err2 = beta * std::abs(f(m + 1, 0)) * avnorm;
      if (err1 > 10.0 * err2) {
        err = err2;
      } else if (err1 > err2) {
        err = err1 * err2 / (err1 - err2);
      } else {
        err = err1;
      }
      if (err <= 1.2 * tol * tau * beta) break;
      if (reject > 60) throw NumericalError("krylov_expv: step size underflow");
      const double shrink =
          kGamma * std::pow(tol * tau * beta / err, 1.0 / static_cast<double>(m));
      tau *= std::clamp(shrink, 0.1, 0.5);
    }

    w = beta * (basis * f.col(0).head(m + 1));
    t_now += tau;
    const double grow =
        err > 0.0 ? kGamma * std::pow(tol * tau * beta / err,
                                      1.0 / static_cast<double>(m))
                  : 10.0;
    tau *= std::clamp(grow, 0.5, 10.0);
  }
  if (!w.allFinite()) throw NumericalError("krylov_expv: non-finite result");
  return w;
}

}  // namespace cqft
