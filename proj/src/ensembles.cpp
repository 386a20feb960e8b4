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

#include "rmtq/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmtq {

Matrix sample_ginibre(int rows, int cols, RandomStream& rs) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("ginibre: dims must be >= 1");
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rs.next_complex_gaussian();
  return g;
}

Matrix sample_wishart(int d, int s, RandomStream& rs) {
  const Matrix g = sample_ginibre(d, s, rs);
  return g * g.adjoint();
}

namespace {

// QR with the R-diagonal phase fix: divide column j of Q by the phase of
// R(j,j) so that the result is Haar on the unitary group / Stiefel manifold.
Matrix haar_from_ginibre(Matrix g) {
  const auto cols = g.cols();
  Eigen::HouseholderQR<Matrix> qr(std::move(g));
  Matrix q = qr.householderQ() * Matrix::Identity(qr.matrixQR().rows(), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double a = std::abs(r);
    if (a > 0.0) q.col(j) *= r / a;
  }
  return q;
}

}  // namespace

Matrix sample_haar_unitary(int n, RandomStream& rs) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n >= 1 required");
  return haar_from_ginibre(sample_ginibre(n, n, rs));
}

Matrix sample_haar_isometry(int rows, int cols, RandomStream& rs) {
  if (cols < 1 || rows < cols)
    throw std::invalid_argument("haar_isometry: rows >= cols >= 1 required");
  return haar_from_ginibre(sample_ginibre(rows, cols, rs));
}

PureState sample_pure_uniform(int d, RandomStream& rs) {
  if (d < 1) throw std::invalid_argument("pure_uniform: d >= 1 required");
  Vector x(d);
  for (int i = 0; i < d; ++i) x(i) = rs.next_complex_gaussian();
  x /= x.norm();
  return PureState::from_vector(std::move(x));
}

DensityMatrix sample_induced(int d, int s, RandomStream& rs) {
  if (d < 1 || s < 1) throw std::invalid_argument("induced: d, s >= 1 required");
  Matrix w = sample_wishart(d, s, rs);
  w /= w.trace().real();
  return DensityMatrix::from_matrix(hermitian_part(w));
}

DensityMatrix sample_bures(int d, RandomStream& rs) {
  if (d < 1) throw std::invalid_argument("bures: d >= 1 required");
  const Matrix a = sample_ginibre(d, d, rs);
  const Matrix u = sample_haar_unitary(d, rs);
  const Matrix m = Matrix::Identity(d, d) + u;
  Matrix sigma = m * (a * a.adjoint()) * m.adjoint();
  sigma /= sigma.trace().real();
  return DensityMatrix::from_matrix(hermitian_part(sigma));
}

bool GraphStateSpec::is_adapted() const {
  // every vertex all-kept or all-traced
  std::vector<int> state(vertex_count + 1, -1);  // -1 unseen, 0 traced, 1 kept
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const int sub[2] = {static_cast<int>(2 * j), static_cast<int>(2 * j + 1)};
    const int vert[2] = {edges[j].first, edges[j].second};
    for (int e = 0; e < 2; ++e) {
      const int want = keep[sub[e]] ? 1 : 0;
      if (state[vert[e]] == -1) state[vert[e]] = want;
      else if (state[vert[e]] != want) return false;
    }
  }
  return true;
}

int GraphStateSpec::boundary_area() const {
  int area = 0;
  for (std::size_t j = 0; j < edges.size(); ++j)
    if (keep[2 * j] != keep[2 * j + 1]) ++area;
  return area;
}

namespace {

// Applies a unitary on the listed subsystems of a state vector over
// (C^N)^(x m), subsystem 0 fastest (column-major multi-index).
void apply_local_unitary(Vector& state, int local_dim, int subsystems,
                         const std::vector<int>& targets, const Matrix& u) {
  const int m = subsystems;
  const int t = static_cast<int>(targets.size());
  long block = 1;
  for (int i = 0; i < t; ++i) block *= local_dim;
  if (u.rows() != block) throw std::invalid_argument("unitary size mismatch");

  // strides of each subsystem in the flat index
  std::vector<long> stride(m, 1);
  for (int s_i = 1; s_i < m; ++s_i) stride[s_i] = stride[s_i - 1] * local_dim;

  std::vector<int> rest;
  for (int s_i = 0; s_i < m; ++s_i)
    if (std::find(targets.begin(), targets.end(), s_i) == targets.end())
      rest.push_back(s_i);

  // enumerate assignments of the non-target subsystems; for each, gather the
  // amplitude block indexed by the targets, multiply, scatter back
  long rest_count = 1;
  for (std::size_t i = 0; i < rest.size(); ++i) rest_count *= local_dim;
  std::vector<long> offsets(block);
  for (long bi = 0; bi < block; ++bi) {
    long off = 0, tmp = bi;
    for (int ti = 0; ti < t; ++ti) {
      off += (tmp % local_dim) * stride[targets[ti]];
      tmp /= local_dim;
    }
    offsets[bi] = off;
  }
  Vector buf(block);
  for (long ri = 0; ri < rest_count; ++ri) {
    long base = 0, tmp = ri;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      base += (tmp % local_dim) * stride[rest[i]];
      tmp /= local_dim;
    }
    for (long bi = 0; bi < block; ++bi) buf(bi) = state(base + offsets[bi]);
    buf = u * buf;
    for (long bi = 0; bi < block; ++bi) state(base + offsets[bi]) = buf(bi);
  }
}

}  // namespace

DensityMatrix sample_graph_state_marginal(const GraphStateSpec& spec, RandomStream& rs) {
  const int m = static_cast<int>(spec.edges.size());
  const int subs = 2 * m;
  const int N = spec.local_dim;
  if (m < 1) throw std::invalid_argument("graph state: at least one edge required");
  if (N < 2) throw std::invalid_argument("graph state: local dimension >= 2 required");
  if (static_cast<int>(spec.keep.size()) != subs)
    throw std::invalid_argument("graph state: keep labels must cover all 2m subsystems");
  for (const auto& [a, b] : spec.edges)
    if (a < 1 || b < 1 || a > spec.vertex_count || b > spec.vertex_count)
      throw std::invalid_argument("graph state: edge endpoint out of range");

  double full_dim = std::pow(static_cast<double>(N), subs);
  if (full_dim > static_cast<double>(1 << 20))
    throw std::invalid_argument("graph state: N^(2m) exceeds the 2^20 guard");
  const long total = static_cast<long>(std::llround(full_dim));

  int kept = 0;
  for (bool b : spec.keep) kept += b ? 1 : 0;
  const double kept_dim = std::pow(static_cast<double>(N), kept);
  if (kept == 0) throw std::invalid_argument("graph state: no subsystem kept");
  if (kept_dim > 4096.0)
    throw std::invalid_argument("graph state: N^|S| exceeds the 4096 guard");

  // product of maximally entangled pairs, one per edge
  Vector state = Vector::Zero(total);
  const double amp = std::pow(static_cast<double>(N), -0.5 * m);
  std::vector<long> stride(subs, 1);
  for (int s_i = 1; s_i < subs; ++s_i) stride[s_i] = stride[s_i - 1] * N;
  // indices where subsystems 2j and 2j+1 agree for every edge
  {
    long pairs = 1;
    for (int j = 0; j < m; ++j) pairs *= N;
    for (long code = 0; code < pairs; ++code) {
      long idx = 0, tmp = code;
      for (int j = 0; j < m; ++j) {
        const long v = tmp % N;
        tmp /= N;
        idx += v * stride[2 * j] + v * stride[2 * j + 1];
      }
      state(idx) = amp;
    }
  }

  // independent Haar unitary on each vertex's subsystems
  for (int v = 1; v <= spec.vertex_count; ++v) {
    std::vector<int> targets;
    for (int j = 0; j < m; ++j) {
      if (spec.edges[j].first == v) targets.push_back(2 * j);
      if (spec.edges[j].second == v) targets.push_back(2 * j + 1);
    }
    if (targets.empty()) continue;
    long dim = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) dim *= N;
    const Matrix u = sample_haar_unitary(static_cast<int>(dim), rs);
    apply_local_unitary(state, N, subs, targets, u);
  }

  // partial trace over the non-kept subsystems: reshape into kept x traced
  std::vector<int> kept_subs, traced_subs;
  for (int s_i = 0; s_i < subs; ++s_i)
    (spec.keep[s_i] ? kept_subs : traced_subs).push_back(s_i);
  const long rows = static_cast<long>(std::llround(kept_dim));
  const long cols = total / rows;
  Matrix psi(rows, cols);
  for (long ci = 0; ci < cols; ++ci) {
    long base = 0, tmp = ci;
    for (int s_i : traced_subs) {
      base += (tmp % N) * stride[s_i];
      tmp /= N;
    }
    for (long ri = 0; ri < rows; ++ri) {
      long idx = base, rtmp = ri;
      for (int s_i : kept_subs) {
        idx += (rtmp % N) * stride[s_i];
        rtmp /= N;
      }
      psi(ri, ci) = state(idx);
    }
  }
  return DensityMatrix::from_matrix(hermitian_part(psi * psi.adjoint()));
}

MpsSpec MpsSpec::standard(int d, int D, int l, int N) {
  MpsSpec spec;
  spec.phys_dim = d;
  spec.bond_dim = D;
  spec.window = l;
  spec.chain_length = N;
  spec.left_boundary = Matrix::Identity(D, D);
  spec.right_boundary = Matrix::Identity(D, D) / static_cast<double>(D);
  return spec;
}

DensityMatrix sample_mps_bulk_marginal(const MpsSpec& spec, RandomStream& rs) {
  const int d = spec.phys_dim, D = spec.bond_dim, l = spec.window;
  const int N = spec.chain_length;
  if (d < 1 || D < 1 || l < 1 || N < l)
    throw std::invalid_argument("mps: invalid dimensions");
  if (d * D > 512) throw std::invalid_argument("mps: phys_dim * bond_dim exceeds 512");
  const double win_dim = std::pow(static_cast<double>(d), l);
  if (win_dim > 256.0) throw std::invalid_argument("mps: phys_dim^window exceeds 256");
  if (spec.left_boundary.rows() != D || spec.left_boundary.cols() != D ||
      spec.right_boundary.rows() != D || spec.right_boundary.cols() != D)
    throw std::invalid_argument("mps: boundary operators must be D x D");
  {
    const RealVector le = hermitian_eigenvalues(spec.left_boundary);
    const RealVector re = hermitian_eigenvalues(spec.right_boundary);
    if (le.minCoeff() < -1e-10 || le.maxCoeff() > 1.0 + 1e-10)
      throw std::invalid_argument("mps: L must be PSD with operator norm <= 1");
    if (re.minCoeff() < -1e-10 ||
        std::abs(spec.right_boundary.trace().real() - 1.0) > 1e-8)
      throw std::invalid_argument("mps: R must be PSD with unit trace");
  }

  // site tensors A_i = <0| U |i over the physical factor, U Haar on
  // C^d (x) C^D (physical first factor in the flattening)
  const Matrix u = sample_haar_unitary(d * D, rs);
  std::vector<Matrix> site(d, Matrix(D, D));
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < D; ++b)
      for (int b2 = 0; b2 < D; ++b2)
        site[i](b2, b) = u(0 + d * b2, i + d * b);

  const auto channel = [&](const Matrix& x) {  // E(X) = sum A_i X A_i*
    Matrix y = Matrix::Zero(D, D);
    for (int i = 0; i < d; ++i) y += site[i] * x * site[i].adjoint();
    return y;
  };
  const auto adjoint_channel = [&](const Matrix& x) {  // E*(X) = sum A_i* X A_i
    Matrix y = Matrix::Zero(D, D);
    for (int i = 0; i < d; ++i) y += site[i].adjoint() * x * site[i];
    return y;
  };

  // trace out sites before/after a centered window
  const int before = (N - l) / 2;
  const int after = N - l - before;
  Matrix left = spec.left_boundary;
  for (int t = 0; t < before; ++t) left = adjoint_channel(left);
  Matrix right = spec.right_boundary;
  for (int t = 0; t < after; ++t) right = channel(right);

  // window tensor: rho[(i),(j)] = tr(left A_{i_1}..A_{i_l} right A*_{j_l}..A*_{j_1})
  const int wd = static_cast<int>(std::llround(win_dim));
  std::vector<Matrix> word(wd);  // A_{i_1} ... A_{i_l}, site 1 index fastest
  for (int code = 0; code < wd; ++code) {
    Matrix prod = Matrix::Identity(D, D);
    int tmp = code;
    for (int site_i = 0; site_i < l; ++site_i) {
      prod = prod * site[tmp % d];
      tmp /= d;
    }
    word[code] = prod;
  }
  Matrix rho(wd, wd);
  for (int cj = 0; cj < wd; ++cj) {
    const Matrix rw = right * word[cj].adjoint();
    for (int ci = 0; ci < wd; ++ci)
      rho(ci, cj) = (left * word[ci] * rw).trace();
  }
  const double tr = rho.trace().real();
  if (tr <= 0.0) throw std::runtime_error("mps: degenerate window trace");
  rho /= tr;
  return DensityMatrix::from_matrix(hermitian_part(rho));
}

QuantumChannel sample_random_isometry_channel(int ancilla_dim, int out_dim,
                                              int in_dim, RandomStream& rs) {
  if (ancilla_dim < 1 || out_dim < 1 || in_dim < 1)
    throw std::invalid_argument("isometry channel: dims >= 1 required");
  if (in_dim > ancilla_dim * out_dim)
    throw std::invalid_argument("isometry channel: requires d <= n k");
  Matrix v = sample_haar_isometry(ancilla_dim * out_dim, in_dim, rs);
  return QuantumChannel::from_isometry(std::move(v), out_dim, ancilla_dim);
}

Matrix sample_product_projection_sum(int d, int legs, int count, RandomStream& rs) {
  if (d < 1 || legs < 1 || count < 1)
    throw std::invalid_argument("projection sum: parameters >= 1 required");
  const double dim = std::pow(static_cast<double>(d), legs);
  if (dim > 4096.0) throw std::invalid_argument("projection sum: d^legs exceeds 4096");
  const int D = static_cast<int>(std::llround(dim));
  // each term is rank one, so accumulate the product vectors and Gram them
  Matrix x(D, count);
  for (int i = 0; i < count; ++i) {
    Vector v = sample_pure_uniform(d, rs).amplitudes();
    for (int leg = 1; leg < legs; ++leg)
      v = tensor_vec(v, sample_pure_uniform(d, rs).amplitudes());
    x.col(i) = v;
  }
  return x * x.adjoint();
}

}  // namespace rmtq
