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

#include "cqft/hilbert.hpp"

#include <cmath>
#include <sstream>

namespace cqft {

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b,
                        const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": space mismatch (" +
                                a.describe() + " vs " + b.describe() + ")");
  }
}

using Triplets = std::vector<Eigen::Triplet<cplx>>;

SparseMatrix from_triplets(std::size_t dim, const Triplets& triplets) {
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

// HilbertSpace

HilbertSpace::HilbertSpace(std::size_t n_qubits, std::vector<int> boson_levels)
    : n_qubits_(n_qubits), levels_(std::move(boson_levels)) {
  if (n_qubits_ > 24) throw std::invalid_argument("HilbertSpace: too many qubits");
  mode_strides_.assign(levels_.size(), 1);
  std::size_t boson_dim = 1;
  for (std::size_t m = levels_.size(); m-- > 0;) {
    if (levels_[m] < 0) {
      throw std::invalid_argument("HilbertSpace: negative Fock cutoff");
    }
    mode_strides_[m] = boson_dim;
    boson_dim *= static_cast<std::size_t>(levels_[m] + 1);
  }
  dim_ = boson_dim << n_qubits_;
}

std::size_t HilbertSpace::qubit_stride(std::size_t qubit) const {
  if (qubit >= n_qubits_) throw std::out_of_range("qubit index out of range");
  return boson_dim() << (n_qubits_ - 1 - qubit);
}

std::size_t HilbertSpace::mode_stride(std::size_t mode) const {
  if (mode >= levels_.size()) throw std::out_of_range("mode index out of range");
  return mode_strides_[mode];
}

std::size_t HilbertSpace::encode(std::span<const int> qubits,
                                 std::span<const int> occupations) const {
  if (qubits.size() != n_qubits_ || occupations.size() != levels_.size()) {
    throw std::invalid_argument("HilbertSpace::encode: label size mismatch");
  }
  std::size_t index = 0;
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    if (qubits[q] != 0 && qubits[q] != 1) {
      throw std::invalid_argument("HilbertSpace::encode: qubit bit not 0/1");
    }
    index += static_cast<std::size_t>(qubits[q]) * qubit_stride(q);
  }
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    if (occupations[m] < 0 || occupations[m] > levels_[m]) {
      throw std::invalid_argument("HilbertSpace::encode: occupation beyond cutoff");
    }
    index += static_cast<std::size_t>(occupations[m]) * mode_strides_[m];
  }
  return index;
}

BasisLabel HilbertSpace::decode(std::size_t index) const {
  if (index >= dim_) throw std::out_of_range("HilbertSpace::decode: index");
  BasisLabel label;
  label.qubits.resize(n_qubits_);
  label.occupations.resize(levels_.size());
  for (std::size_t q = 0; q < n_qubits_; ++q) label.qubits[q] = qubit_bit(index, q);
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    label.occupations[m] = occupation(index, m);
  }
  return label;
}

std::string HilbertSpace::describe() const {
  std::ostringstream os;
  os << n_qubits_ << " qubits x [";
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    os << (m ? "," : "") << levels_[m];
  }
  os << "] (dim " << dim_ << ")";
  return os.str();
}

// SparseOperator

SparseOperator::SparseOperator(HilbertSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw std::invalid_argument("SparseOperator: matrix does not match space dim");
  }
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::identity(const HilbertSpace& space) {
  SparseMatrix m(static_cast<Eigen::Index>(space.dim()),
                 static_cast<Eigen::Index>(space.dim()));
  m.setIdentity();
  return {space, std::move(m)};
}

SparseOperator SparseOperator::zero(const HilbertSpace& space) {
  return {space, SparseMatrix(static_cast<Eigen::Index>(space.dim()),
                              static_cast<Eigen::Index>(space.dim()))};
}

SparseOperator SparseOperator::from_dense(const HilbertSpace& space,
                                          const CMatrix& dense) {
  return {space, dense.sparseView()};
}

SparseOperator SparseOperator::adjoint() const {
  return {space_, SparseMatrix(matrix_.adjoint())};
}

bool SparseOperator::is_hermitian(double tol) const {
  return max_abs_diff(*this, adjoint()) < tol;
}

bool SparseOperator::is_finite() const {
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag())) {
        return false;
      }
    }
  }
  return true;
}

double SparseOperator::max_abs() const {
  double best = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  require_same_space(space_, other.space_, "operator+");
  matrix_ += other.matrix_;
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& other) {
  require_same_space(space_, other.space_, "operator-");
  matrix_ -= other.matrix_;
  return *this;
}

SparseOperator& SparseOperator::operator*=(cplx scale) {
  matrix_ *= scale;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a.space_, b.space_, "compose");
  return {a.space_, SparseMatrix(a.matrix_ * b.matrix_)};
}

double max_abs_diff(const SparseOperator& a, const SparseOperator& b) {
  return (a - b).max_abs();
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b + b * a;
}

// StateVector

StateVector::StateVector(HilbertSpace space, CVector amplitudes)
    : space_(std::move(space)), amp_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amp_.size()) != space_.dim()) {
    throw std::invalid_argument("StateVector: amplitude count does not match dim");
  }
}

StateVector StateVector::basis(const HilbertSpace& space, std::size_t index) {
  if (index >= space.dim()) throw std::out_of_range("StateVector::basis: index");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {space, std::move(v)};
}

cplx StateVector::inner(const StateVector& other) const {
  require_same_space(space_, other.space_, "inner");
  return amp_.dot(other.amp_);
}

// Elementary operators

SparseOperator boson_op(const HilbertSpace& space, std::size_t mode,
                        BosonKind kind) {
  if (mode >= space.n_modes()) {
    throw std::out_of_range("boson_op: mode index " + std::to_string(mode) +
                            " out of range");
  }
  const std::size_t stride = space.mode_stride(mode);
  const int n_max = space.n_max(mode);
  Triplets t;
  t.reserve(space.dim());
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const int n = space.occupation(idx, mode);
    const auto col = static_cast<Eigen::Index>(idx);
    switch (kind) {
      case BosonKind::Annihilate:
        if (n > 0) {
          t.emplace_back(static_cast<Eigen::Index>(idx - stride), col,
                         std::sqrt(static_cast<double>(n)));
        }
        break;
      case BosonKind::Create:
        if (n < n_max) {
          t.emplace_back(static_cast<Eigen::Index>(idx + stride), col,
                         std::sqrt(static_cast<double>(n + 1)));
        }
        break;
      case BosonKind::Number:
        if (n > 0) t.emplace_back(col, col, static_cast<double>(n));
        break;
    }
  }
  return {space, from_triplets(space.dim(), t)};
}

SparseOperator pauli_op(const HilbertSpace& space, std::size_t qubit,
                        PauliAxis axis) {
  if (qubit >= space.n_qubits()) {
    throw std::out_of_range("pauli_op: qubit index " + std::to_string(qubit) +
                            " out of range");
  }
  const std::size_t stride = space.qubit_stride(qubit);
  Triplets t;
  t.reserve(space.dim());
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const bool up = space.qubit_bit(idx, qubit) == 0;
    const auto col = static_cast<Eigen::Index>(idx);
    const auto flipped =
        static_cast<Eigen::Index>(up ? idx + stride : idx - stride);
    switch (axis) {
      case PauliAxis::X:
        t.emplace_back(flipped, col, 1.0);
        break;
      case PauliAxis::Y:
        t.emplace_back(flipped, col, up ? kI : -kI);
        break;
      case PauliAxis::Z:
        t.emplace_back(col, col, up ? 1.0 : -1.0);
        break;
      case PauliAxis::Plus:
        if (!up) t.emplace_back(flipped, col, 1.0);
        break;
      case PauliAxis::Minus:
        if (up) t.emplace_back(flipped, col, 1.0);
        break;
    }
  }
  return {space, from_triplets(space.dim(), t)};
}

SparseOperator qubit_operator(const HilbertSpace& space, const CMatrix& qubits) {
  SparseMatrix id(static_cast<Eigen::Index>(space.boson_dim()),
                  static_cast<Eigen::Index>(space.boson_dim()));
  id.setIdentity();
  return qubit_boson_product(space, qubits, id);
}

SparseOperator qubit_boson_product(const HilbertSpace& space,
                                   const CMatrix& qubits,
                                   const SparseMatrix& bosons) {
  const auto qd = static_cast<Eigen::Index>(space.qubit_dim());
  const auto bd = static_cast<Eigen::Index>(space.boson_dim());
  if (qubits.rows() != qd || qubits.cols() != qd || bosons.rows() != bd ||
      bosons.cols() != bd) {
    throw std::invalid_argument("qubit_boson_product: factor dimension mismatch");
  }
  Triplets t;
  t.reserve(static_cast<std::size_t>(bosons.nonZeros()) * 4);
  for (Eigen::Index qc = 0; qc < qd; ++qc) {
    for (Eigen::Index qr = 0; qr < qd; ++qr) {
      const cplx q = qubits(qr, qc);
      if (q == cplx{}) continue;
      for (Eigen::Index k = 0; k < bosons.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(bosons, k); it; ++it) {
          t.emplace_back(qr * bd + it.row(), qc * bd + it.col(), q * it.value());
        }
      }
    }
  }
  return {space, from_triplets(space.dim(), t)};
}

StateVector apply(const SparseOperator& op, const StateVector& state) {
  require_same_space(op.space(), state.space(), "apply");
  return {state.space(), CVector(op.matrix() * state.amplitudes())};
}

}  // namespace cqft
