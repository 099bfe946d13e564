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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cqft {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/// Raised when a non-finite number shows up in an operator or a state.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Basis labels of a single flat index: one bit per qubit (0 = up, 1 = down)
/// and one occupation per boson mode.
struct BasisLabel {
  std::vector<int> qubits;
  std::vector<int> occupations;
};

/**
 * Composite space of qubits and truncated boson modes.
 *
 * Layout: the qubits are the most significant factor, qubit 0 first; the
 * boson modes follow in ascending order, and the last mode is the least
 * significant digit. A qubit bit of 0 is |up> (the +1 eigenstate of sigma_z).
 */
class HilbertSpace {
 public:
  HilbertSpace() = default;
  HilbertSpace(std::size_t n_qubits, std::vector<int> boson_levels);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_modes() const { return levels_.size(); }
  /// Fock cutoff n_max of a mode; occupations run over 0..n_max.
  int n_max(std::size_t mode) const { return levels_.at(mode); }
  const std::vector<int>& boson_levels() const { return levels_; }
  std::size_t dim() const { return dim_; }
  std::size_t qubit_dim() const { return std::size_t{1} << n_qubits_; }
  std::size_t boson_dim() const { return dim_ >> n_qubits_; }

  std::size_t qubit_stride(std::size_t qubit) const;
  std::size_t mode_stride(std::size_t mode) const;

  std::size_t encode(std::span<const int> qubits,
                     std::span<const int> occupations) const;
  BasisLabel decode(std::size_t index) const;

  int qubit_bit(std::size_t index, std::size_t qubit) const {
    return static_cast<int>((index / qubit_stride(qubit)) % 2);
  }
  int occupation(std::size_t index, std::size_t mode) const {
    return static_cast<int>((index / mode_stride(mode)) %
                            static_cast<std::size_t>(levels_[mode] + 1));
  }

  /// The boson factor alone, with no qubits.
  HilbertSpace boson_factor() const { return HilbertSpace(0, levels_); }

  bool operator==(const HilbertSpace& other) const {
    return n_qubits_ == other.n_qubits_ && levels_ == other.levels_;
  }

  std::string describe() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<int> levels_;
  std::vector<std::size_t> mode_strides_;
  std::size_t dim_ = 1;
};

/// Complex sparse operator over a HilbertSpace.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(HilbertSpace space, SparseMatrix matrix);

  static SparseOperator identity(const HilbertSpace& space);
  static SparseOperator zero(const HilbertSpace& space);
  static SparseOperator from_dense(const HilbertSpace& space,
                                   const CMatrix& dense);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return space_.dim(); }
  CMatrix dense() const { return CMatrix(matrix_); }

  SparseOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_finite() const;
  double max_abs() const;

  SparseOperator& operator+=(const SparseOperator& other);
  SparseOperator& operator-=(const SparseOperator& other);
  SparseOperator& operator*=(cplx scale);

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) {
    return a += b;
  }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) {
    return a -= b;
  }
  friend SparseOperator operator*(SparseOperator a, cplx s) { return a *= s; }
  friend SparseOperator operator*(cplx s, SparseOperator a) { return a *= s; }
  /// Composition: (a * b) acts with b first.
  friend SparseOperator operator*(const SparseOperator& a,
                                  const SparseOperator& b);

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

/// max_ij |a_ij - b_ij|
double max_abs_diff(const SparseOperator& a, const SparseOperator& b);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

class StateVector {
 public:
  StateVector() = default;
  StateVector(HilbertSpace space, CVector amplitudes);

  static StateVector basis(const HilbertSpace& space, std::size_t index);

  const HilbertSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amp_; }
  CVector& amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }
  bool is_finite() const { return amp_.allFinite(); }

  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  HilbertSpace space_;
  CVector amp_;
};

enum class BosonKind { Create, Annihilate, Number };
enum class PauliAxis { X, Y, Z, Plus, Minus };

/// Truncated ladder or number operator of one mode; a^dag|n_max> = 0.
SparseOperator boson_op(const HilbertSpace& space, std::size_t mode,
                        BosonKind kind);

/// Single-qubit operator on `qubit`. sigma_pm = (sigma_x +- i sigma_y)/2, so
/// sigma_minus maps |up> to |down>.
SparseOperator pauli_op(const HilbertSpace& space, std::size_t qubit,
                        PauliAxis axis);

/// Embeds a 2^n_qubits square matrix acting on the qubit factor.
SparseOperator qubit_operator(const HilbertSpace& space, const CMatrix& qubits);

/// Q (x) B with Q on the qubit factor and B on the boson factor.
SparseOperator qubit_boson_product(const HilbertSpace& space,
                                   const CMatrix& qubits,
                                   const SparseMatrix& bosons);

StateVector apply(const SparseOperator& op, const StateVector& state);

enum class ExpmMethod { Auto, Dense, Krylov };

struct ExpmOptions {
  ExpmMethod method = ExpmMethod::Auto;
  /// Auto picks dense exponentiation up to this dimension.
  std::size_t dense_max_dim = 4096;
  std::size_t krylov_dim = 30;
  double krylov_tol = 1e-13;
};

/// exp(scale * A) as an operator. Dense scaling-and-squaring; refuses
/// dimensions above options.dense_max_dim.
SparseOperator op_expm(const SparseOperator& a, cplx scale,
                       const ExpmOptions& options = {});

/// exp(scale * A) |state>.
StateVector expm_apply(const SparseOperator& a, cplx scale,
                       const StateVector& state,
                       const ExpmOptions& options = {});

/// Krylov (Arnoldi) approximation of exp(scale * A) v. Sub-steps internally
/// until the a posteriori error estimate falls under tol.
CVector krylov_expv(const SparseMatrix& a, cplx scale, const CVector& v,
                    std::size_t krylov_dim = 30, double tol = 1e-13);

/// Dense exponential of a small matrix.
CMatrix dense_expm(const CMatrix& a);

}  // namespace cqft
