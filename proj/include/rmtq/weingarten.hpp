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

#ifndef RMTQ_WEINGARTEN_HPP
#define RMTQ_WEINGARTEN_HPP

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "rmtq/permutation.hpp"
#include "rmtq/rational.hpp"

namespace rmtq {

/// Exact unitary Weingarten values for fixed (dimension n, degree p).
///
/// Wg(n, .) is the class function on S_p inverting sigma |-> n^{#sigma}
/// under group-algebra convolution. The table is computed by solving the
/// class-function convolution system in exact rational arithmetic (one
/// unknown per cycle type) and is memoized per (n, p).
///
/// Only the invertible regime n >= p is supported; n < p would need the
/// pseudo-inverse, for which no construction is implemented.
class WeingartenTable {
 public:
  /// Memoized lookup, thread-safe. Requires 1 <= p <= 8 and n >= p.
  static const WeingartenTable& get(int n, int p);

  const Rational& value(const IntegerPartition& cycle_type) const;
  const Rational& value(const Permutation& sigma) const;

  int dimension() const { return n_; }
  int degree() const { return p_; }
  const std::map<IntegerPartition, Rational>& values() const { return values_; }

 private:
  WeingartenTable(int n, int p);
  int n_, p_;
  std::map<IntegerPartition, Rational> values_;
};

/// Wg(n, sigma) for any sigma of the given cycle type, exact.
Rational wg_exact(int n, const IntegerPartition& cycle_type);

/// Leading-order approximation n^{-(p+|sigma|)} * Mob(sigma).
double wg_asymptotic(int n, const Permutation& sigma);

/// Index data of a Haar monomial: E[ U_{i1 j1}..U_{ip jp} conj(U)_{i'1 j'1}.. ].
/// All entries 1-based in {1..n}. The two groups may have different lengths,
/// in which case the integral vanishes.
struct MonomialSpec {
  std::vector<int> i, j;         // row/column indices of the U factors
  std::vector<int> i_conj, j_conj;  // row/column indices of the conj(U) factors
};

/// Exact Haar-unitary monomial integral via the double permutation sum.
/// Requires p <= 6 and n >= p; returns exact 0 when the factor counts differ.
Rational haar_monomial_integral(int n, const MonomialSpec& spec);

/// Covariance data of a centered real Gaussian family.
class CovarianceForm {
 public:
  /// Validates symmetry and positive semidefiniteness (tolerance 1e-10).
  explicit CovarianceForm(Eigen::MatrixXd cov);
  static CovarianceForm standard(int k);  // identity covariance

  int variables() const { return static_cast<int>(cov_.rows()); }
  double operator()(int a, int b) const { return cov_(a - 1, b - 1); }  // 1-based

 private:
  Eigen::MatrixXd cov_;
};

/// E[x_{indices[0]} x_{indices[1]} ...] as the sum over pairings of products
/// of covariances (0 for odd length). Indices are 1-based variable labels.
double wick_moment(const CovarianceForm& form, const std::vector<int>& indices);

}  // namespace rmtq

#endif  // RMTQ_WEINGARTEN_HPP
