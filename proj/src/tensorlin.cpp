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

#include "rmtq/tensorlin.hpp"

#include <cmath>
#include <stdexcept>

namespace rmtq {

namespace {
constexpr double kHermTol = 1e-10;
constexpr double kEigTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kEntropyClip = 1e-10;

Split require_split(const std::optional<Split>& s, const char* who) {
  if (!s) throw std::invalid_argument(std::string(who) + ": bipartite split required");
  return *s;
}
}  // namespace

Vector tensor_vec(const Vector& u_first, const Vector& v_second) {
  const int n = static_cast<int>(u_first.size());
  const int k = static_cast<int>(v_second.size());
  Vector out(n * k);
  for (int a = 0; a < k; ++a) out.segment(a * n, n) = v_second(a) * u_first;
  return out;
}

Matrix tensor_op(const Matrix& a_first, const Matrix& b_second) {
  const int n = static_cast<int>(a_first.rows());
  const int k = static_cast<int>(b_second.rows());
  if (a_first.cols() != n || b_second.cols() != k)
    throw std::invalid_argument("tensor_op: square factors required");
  Matrix out(n * k, n * k);
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < k; ++a)
      out.block(a * n, b * n, n, n) = b_second(a, b) * a_first;
  return out;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, std::optional<Split> split) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  if (split && split->dim() != m.rows())
    throw std::invalid_argument("density matrix: split does not match dimension");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("density matrix must be Hermitian");
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol)
    throw std::invalid_argument("density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigTol)
    throw std::invalid_argument("density matrix must be positive semidefinite");
  return DensityMatrix(std::move(m), split);
}

DensityMatrix DensityMatrix::maximally_mixed(int d, std::optional<Split> split) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (split && split->dim() != d)
    throw std::invalid_argument("split does not match dimension");
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), split);
}

DensityMatrix DensityMatrix::with_split(Split s) const {
  if (s.dim() != dim()) throw std::invalid_argument("split does not match dimension");
  return DensityMatrix(m_, s);
}

PureState PureState::from_vector(Vector amplitudes, std::optional<Split> split) {
  if (amplitudes.size() < 1) throw std::invalid_argument("empty state vector");
  if (split && split->dim() != amplitudes.size())
    throw std::invalid_argument("pure state: split does not match dimension");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("pure state must have unit norm");
  return PureState(std::move(amplitudes), split);
}

DensityMatrix PureState::density() const {
  return DensityMatrix::from_matrix(v_ * v_.adjoint(), split_);
}

PureState max_entangled(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i + d * i) = amp;
  return PureState::from_vector(std::move(v), Split{d, d});
}

Matrix partial_trace(const Matrix& m, Split split, Side traced) {
  const int n = split.first, k = split.second;
  if (m.rows() != n * k || m.cols() != n * k)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (traced == Side::Second) {
    Matrix out = Matrix::Zero(n, n);
    for (int a = 0; a < k; ++a) out += m.block(a * n, a * n, n, n);
    return out;
  }
  Matrix out = Matrix::Zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) out(a, b) = m.block(a * n, b * n, n, n).trace();
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side traced) {
  const Split s = require_split(rho.split(), "partial_trace");
  return DensityMatrix::from_matrix(partial_trace(rho.matrix(), s, traced));
}

Matrix partial_transpose(const Matrix& m, Split split) {
  const int n = split.first, k = split.second;
  if (m.rows() != n * k || m.cols() != n * k)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  Matrix out(n * k, n * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      out.block(a * n, b * n, n, n) = m.block(b * n, a * n, n, n);
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix(), require_split(rho.split(), "partial_transpose"));
}

Matrix realign(const Matrix& m, Split split) {
  const int n = split.first, k = split.second;
  if (m.rows() != n * k || m.cols() != n * k)
    throw std::invalid_argument("realign: dimension mismatch");
  Matrix out(n * n, k * k);
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          out(i + n * j, a + k * b) = m(i + n * a, j + n * b);
  return out;
}

Matrix realign(const DensityMatrix& rho) {
  return realign(rho.matrix(), require_split(rho.split(), "realign"));
}

double entropy(const RealVector& spectrum, double p) {
  if (p <= 0.0) throw std::invalid_argument("entropy: order p must be positive");
  if (std::abs(p - 1.0) < 1e-12) {
    double h = 0.0;
    for (int i = 0; i < spectrum.size(); ++i) {
      const double x = spectrum(i);
      if (x <= kEntropyClip) continue;  // 0 log 0 = 0
      h -= x * std::log(x);
    }
    return h;
  }
  double s = 0.0;
  for (int i = 0; i < spectrum.size(); ++i) {
    const double x = spectrum(i);
    if (x <= kEntropyClip) continue;
    s += std::pow(x, p);
  }
  return std::log(s) / (1.0 - p);
}

double entropy(const DensityMatrix& rho, double p) { return entropy(rho.spectrum(), p); }

double schatten1(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Complex trace_sigma(const std::vector<Matrix>& matrices, const Permutation& sigma) {
  const int p = sigma.degree();
  if (static_cast<int>(matrices.size()) != p)
    throw std::invalid_argument("trace_sigma: matrix count must equal degree");
  const auto size = matrices.empty() ? 0 : matrices.front().rows();
  for (const auto& m : matrices)
    if (m.rows() != size || m.cols() != size)
      throw std::invalid_argument("trace_sigma: equal square sizes required");
  Complex out(1.0, 0.0);
  for (const auto& cycle : sigma.cycles()) {
    Matrix prod = matrices[cycle.front() - 1];
    for (std::size_t t = 1; t < cycle.size(); ++t) prod = prod * matrices[cycle[t] - 1];
    out *= prod.trace();
  }
  return out;
}

}  // namespace rmtq
