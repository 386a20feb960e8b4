// Copyright 2026 The rmtq authors
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

#ifndef RMTQ_TENSORLIN_HPP
#define RMTQ_TENSORLIN_HPP

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "rmtq/permutation.hpp"

namespace rmtq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Bipartite flattening convention, fixed project-wide:
// a product vector u (x) v on C^n (x) C^k has component u_i * v_a at flat
// index i + n*a -- the FIRST factor index varies fastest (column-major, so
// Eigen::Map<Matrix>(x.data(), n, k) recovers the n x k coefficient matrix
// X(i,a)). All partial operations below are defined with respect to it.

/// Dimensions (n, k) of a bipartite split C^n (x) C^k.
struct Split {
  int first = 0, second = 0;
  int dim() const { return first * second; }
  bool operator==(const Split&) const = default;
};

enum class Side { First, Second };

/// Flat vector of the product u (x) v under the convention above.
Vector tensor_vec(const Vector& u_first, const Vector& v_second);

/// Flat matrix of the operator A (x) B (A on the first factor).
Matrix tensor_op(const Matrix& a_first, const Matrix& b_second);

/// (M + M*)/2; applied before every eigensolve to control drift.
Matrix hermitian_part(const Matrix& m);

/// Eigenvalues of the Hermitian part of m, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

/// Hermitian PSD unit-trace matrix, optionally carrying a bipartite split.
class DensityMatrix {
 public:
  /// Validates: Hermitian within 1e-10, eigenvalues >= -1e-10, trace 1
  /// within 1e-10, and split consistency when given.
  static DensityMatrix from_matrix(Matrix m, std::optional<Split> split = {});
  static DensityMatrix maximally_mixed(int d, std::optional<Split> split = {});

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const std::optional<Split>& split() const { return split_; }
  /// Same entries, re-annotated with a split (nk must equal dim).
  DensityMatrix with_split(Split s) const;
  /// Eigenvalues, ascending.
  RealVector spectrum() const { return hermitian_eigenvalues(m_); }

 private:
  DensityMatrix(Matrix m, std::optional<Split> s) : m_(std::move(m)), split_(s) {}
  Matrix m_;
  std::optional<Split> split_;
};

/// Unit vector in C^d, optionally carrying a bipartite split.
class PureState {
 public:
  /// Validates unit norm within 1e-12.
  static PureState from_vector(Vector amplitudes, std::optional<Split> split = {});

  const Vector& amplitudes() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  const std::optional<Split>& split() const { return split_; }
  DensityMatrix density() const;

 private:
  PureState(Vector v, std::optional<Split> s) : v_(std::move(v)), split_(s) {}
  Vector v_;
  std::optional<Split> split_;
};

/// omega_d = d^{-1/2} sum_i e_i (x) e_i, with split (d, d).
PureState max_entangled(int d);

DensityMatrix partial_trace(const DensityMatrix& rho, Side traced);
Matrix partial_trace(const Matrix& m, Split split, Side traced);

/// [id (x) transp](rho); Hermitian, same trace, possibly non-PSD.
Matrix partial_transpose(const DensityMatrix& rho);
Matrix partial_transpose(const Matrix& m, Split split);

/// Reshuffling L(e_i e_j* (x) f_a f_b*) = e_i f_a* (x) e_j f_b* as an
/// n^2 x k^2 matrix; rows indexed by (i,j) -> i + n*j, columns by
/// (a,b) -> a + k*b. Frobenius norm preserved.
Matrix realign(const DensityMatrix& rho);
Matrix realign(const Matrix& m, Split split);

/// Renyi entropy of order p in nats (p = 1 gives von Neumann / Shannon).
/// Spectrum entries within [-1e-10, 1e-10] are treated as exact zeros.
double entropy(const DensityMatrix& rho, double p = 1.0);
double entropy(const RealVector& spectrum, double p = 1.0);

/// Schatten 1-norm (sum of singular values).
double schatten1(const Matrix& m);

/// Product over cycles (i1..ik) of sigma of Tr(A_{i1} ... A_{ik}).
Complex trace_sigma(const std::vector<Matrix>& matrices, const Permutation& sigma);

}  // namespace rmtq

#endif  // RMTQ_TENSORLIN_HPP
