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

#include "rmtq/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmtq/ensembles.hpp"

namespace rmtq {

namespace {
constexpr double kChannelTol = 1e-9;
}

QuantumChannel QuantumChannel::from_isometry(Matrix v, int out_dim, int ancilla_dim) {
  if (out_dim < 1 || ancilla_dim < 1)
    throw std::invalid_argument("channel: output/ancilla dims >= 1 required");
  if (v.rows() != static_cast<long>(out_dim) * ancilla_dim || v.cols() < 1)
    throw std::invalid_argument("channel: isometry must be (k n) x d");
  const int d = static_cast<int>(v.cols());
  const Matrix gram = v.adjoint() * v;
  if ((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kChannelTol)
    throw std::invalid_argument("channel: V*V != I, not an isometry (not trace preserving)");
  QuantumChannel ch(ChannelForm::Stinespring, d, out_dim, ancilla_dim);
  ch.isometry_ = std::move(v);
  return ch;
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("channel: empty Kraus list");
  const int k = static_cast<int>(kraus.front().rows());
  const int d = static_cast<int>(kraus.front().cols());
  for (const auto& l : kraus)
    if (l.rows() != k || l.cols() != d)
      throw std::invalid_argument("channel: Kraus operators must share shape");
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& l : kraus) sum += l.adjoint() * l;
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kChannelTol)
    throw std::invalid_argument("channel: sum L*L != I (not trace preserving)");
  QuantumChannel ch(ChannelForm::Kraus, d, k, static_cast<int>(kraus.size()));
  ch.kraus_ = std::move(kraus);
  return ch;
}

QuantumChannel QuantumChannel::from_choi(Matrix choi, int in_dim, int out_dim) {
  if (in_dim < 1 || out_dim < 1)
    throw std::invalid_argument("channel: dims >= 1 required");
  const long dk = static_cast<long>(in_dim) * out_dim;
  if (choi.rows() != dk || choi.cols() != dk)
    throw std::invalid_argument("channel: Choi matrix must be dk x dk");
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > kChannelTol)
    throw std::invalid_argument("channel: Choi matrix not Hermitian (not completely positive)");
  const RealVector eigs = hermitian_eigenvalues(choi);
  if (eigs.minCoeff() < -kChannelTol)
    throw std::invalid_argument("channel: Choi matrix not PSD (not completely positive)");
  // trace over the output factor must be I_d
  const Matrix reduced =
      partial_trace(choi, Split{in_dim, out_dim}, Side::Second);
  if ((reduced - Matrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff() > kChannelTol)
    throw std::invalid_argument("channel: Tr_out(Choi) != I (not trace preserving)");
  QuantumChannel ch(ChannelForm::Choi, in_dim, out_dim, in_dim * out_dim);
  ch.choi_ = std::move(choi);
  return ch;
}

QuantumChannel QuantumChannel::identity(int d) {
  std::vector<Matrix> kraus{Matrix::Identity(d, d)};
  return from_kraus(std::move(kraus));
}

QuantumChannel QuantumChannel::depolarizing(int d) {
  if (d < 1) throw std::invalid_argument("channel: dims >= 1 required");
  std::vector<Matrix> kraus;
  kraus.reserve(d * d);
  const double f = 1.0 / std::sqrt(static_cast<double>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Matrix e = Matrix::Zero(d, d);
      e(a, b) = f;
      kraus.push_back(std::move(e));
    }
  return from_kraus(std::move(kraus));
}

const Matrix& QuantumChannel::isometry() const {
  if (form_ != ChannelForm::Stinespring)
    throw std::logic_error("channel is not in Stinespring form");
  return isometry_;
}

const std::vector<Matrix>& QuantumChannel::kraus() const {
  if (form_ != ChannelForm::Kraus)
    throw std::logic_error("channel is not in Kraus form");
  return kraus_;
}

const Matrix& QuantumChannel::choi() const {
  if (form_ != ChannelForm::Choi) throw std::logic_error("channel is not in Choi form");
  return choi_;
}

namespace {

// Kraus slices of a Stinespring isometry: L_c(a, i) = V(a + k c, i).
std::vector<Matrix> kraus_from_isometry(const Matrix& v, int k, int n) {
  const int d = static_cast<int>(v.cols());
  std::vector<Matrix> kraus(n, Matrix(k, d));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < k; ++a) kraus[c].row(a) = v.row(a + k * c);
  return kraus;
}

Matrix isometry_from_kraus(const std::vector<Matrix>& kraus) {
  const int n = static_cast<int>(kraus.size());
  const int k = static_cast<int>(kraus.front().rows());
  const int d = static_cast<int>(kraus.front().cols());
  Matrix v(static_cast<long>(k) * n, d);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < k; ++a) v.row(a + k * c) = kraus[c].row(a);
  return v;
}

// Choi vector of a Kraus operator: w(i + d a) = L(a, i).
Matrix choi_from_kraus(const std::vector<Matrix>& kraus, int d, int k) {
  Matrix choi = Matrix::Zero(static_cast<long>(d) * k, static_cast<long>(d) * k);
  Vector w(static_cast<long>(d) * k);
  for (const auto& l : kraus) {
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < d; ++i) w(i + static_cast<long>(d) * a) = l(a, i);
    choi.noalias() += w * w.adjoint();
  }
  return choi;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int d, int k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(choi));
  const RealVector eigs = es.eigenvalues();
  const double cutoff = std::max(1e-12, 1e-12 * eigs.cwiseAbs().maxCoeff());
  std::vector<Matrix> kraus;
  for (int m = 0; m < eigs.size(); ++m) {
    if (eigs(m) <= cutoff) continue;
    const double scale = std::sqrt(eigs(m));
    Matrix l(k, d);
    for (int a = 0; a < k; ++a)
      for (int i = 0; i < d; ++i)
        l(a, i) = scale * es.eigenvectors()(i + static_cast<long>(d) * a, m);
    kraus.push_back(std::move(l));
  }
  if (kraus.empty()) throw std::invalid_argument("channel: zero Choi matrix");
  return kraus;
}

}  // namespace

QuantumChannel QuantumChannel::to(ChannelForm target) const {
  if (target == form_) return *this;
  // Kraus form is the hub for every conversion
  std::vector<Matrix> kraus;
  switch (form_) {
    case ChannelForm::Stinespring:
      kraus = kraus_from_isometry(isometry_, k_, n_);
      break;
    case ChannelForm::Kraus:
      kraus = kraus_;
      break;
    case ChannelForm::Choi:
      kraus = kraus_from_choi(choi_, d_, k_);
      break;
  }
  switch (target) {
    case ChannelForm::Kraus:
      return from_kraus(std::move(kraus));
    case ChannelForm::Stinespring:
      return from_isometry(isometry_from_kraus(kraus), k_,
                           static_cast<int>(kraus.size()));
    case ChannelForm::Choi:
      return from_choi(choi_from_kraus(kraus, d_, k_), d_, k_);
  }
  throw std::logic_error("unreachable");
}

Matrix QuantumChannel::apply_to(const Matrix& x) const {
  if (x.rows() != d_ || x.cols() != d_)
    throw std::invalid_argument("channel apply: input dimension mismatch");
  switch (form_) {
    case ChannelForm::Stinespring: {
      const Matrix big = isometry_ * x * isometry_.adjoint();
      return partial_trace(big, Split{k_, n_}, Side::Second);
    }
    case ChannelForm::Kraus: {
      Matrix out = Matrix::Zero(k_, k_);
      for (const auto& l : kraus_) out.noalias() += l * x * l.adjoint();
      return out;
    }
    case ChannelForm::Choi: {
      Matrix out(k_, k_);
      for (int a = 0; a < k_; ++a)
        for (int b = 0; b < k_; ++b) {
          Complex acc(0, 0);
          for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
              acc += choi_(i + static_cast<long>(d_) * a,
                           j + static_cast<long>(d_) * b) *
                     x(j, i);
          out(a, b) = acc;
        }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix::from_matrix(hermitian_part(apply_to(rho.matrix())));
}

Matrix QuantumChannel::apply_pure(const Vector& x) const {
  if (x.size() != d_)
    throw std::invalid_argument("channel apply: input dimension mismatch");
  const double norm2 = x.squaredNorm();
  if (norm2 <= 0.0) throw std::invalid_argument("channel apply: zero input");
  if (form_ == ChannelForm::Stinespring) {
    const Vector big = isometry_ * x;
    const Eigen::Map<const Matrix> w(big.data(), k_, n_);
    return (w * w.adjoint()) / norm2;
  }
  return apply_to(x * x.adjoint() / norm2);
}

QuantumChannel QuantumChannel::conjugate() const {
  QuantumChannel out = *this;
  out.isometry_ = isometry_.conjugate();
  for (auto& l : out.kraus_) l = l.conjugate();
  out.choi_ = choi_.conjugate();
  return out;
}

DensityMatrix conjugate_pair_bell_output(const QuantumChannel& ch) {
  if (ch.form() != ChannelForm::Stinespring)
    throw std::invalid_argument("bell output: channel must be in isometry form");
  const Matrix& v = ch.isometry();
  const int k = ch.out_dim(), n = ch.ancilla_dim(), d = ch.in_dim();

  // Z = (1/d) S S* where S is the (k^2 x n^2) reshuffle of V V*:
  // the row (a + k a') of S is vec of slice_a slice_{a'}^*, with
  // slice_a(c, i) = V(a + k c, i).
  std::vector<Matrix> slice(k, Matrix(n, d));
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < n; ++c) slice[a].row(c) = v.row(a + k * c);
  Matrix s(static_cast<long>(k) * k, static_cast<long>(n) * n);
  for (int a2 = 0; a2 < k; ++a2)
    for (int a = 0; a < k; ++a) {
      const Matrix block = slice[a] * slice[a2].adjoint();
      s.row(a + k * a2) =
          Eigen::Map<const Eigen::RowVectorXcd>(block.data(), block.size());
    }
  Matrix z = (s * s.adjoint()) / static_cast<double>(d);
  return DensityMatrix::from_matrix(hermitian_part(z), Split{k, k});
}

namespace {

double renyi_entropy_of_output(const Matrix& rho_out, double p) {
  return entropy(hermitian_eigenvalues(rho_out), p);
}

}  // namespace

MoeEstimate moe_estimate(const QuantumChannel& ch, double p, int restarts,
                         int iterations, RandomStream rs) {
  if (restarts < 1) throw std::invalid_argument("moe: restarts >= 1 required");
  if (iterations < 1) throw std::invalid_argument("moe: iterations >= 1 required");
  if (p <= 0.0) throw std::invalid_argument("moe: entropy order must be positive");
  const QuantumChannel iso =
      ch.form() == ChannelForm::Stinespring ? ch : ch.to(ChannelForm::Stinespring);
  const Matrix& v = iso.isometry();
  const int d = iso.in_dim(), k = iso.out_dim(), n = iso.ancilla_dim();

  // output spectrum entropy of (possibly unnormalized) x via the reshaped
  // image vector; numerical gradient perturbations are rank-one updates of
  // the image, so each partial derivative costs O(k^2 n), not O(n k d)
  const auto value_of = [&](const Vector& image, double norm2) {
    const Eigen::Map<const Matrix> w(image.data(), k, n);
    Matrix rho = (w * w.adjoint()) / norm2;
    return renyi_entropy_of_output(rho, p);
  };

  constexpr double kGradStep = 1e-5;
  MoeEstimate best;
  best.value = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    RandomStream sub = rs.substream(r);
    Vector x = sample_pure_uniform(d, sub).amplitudes();
    Vector image = v * x;
    double fx = value_of(image, 1.0);

    for (int it = 0; it < iterations; ++it) {
      // numerical gradient over the 2d real coordinates
      Vector grad(d);
      for (int i = 0; i < d; ++i) {
        double g_re, g_im;
        {
          const Vector up = image + kGradStep * v.col(i);
          const Vector dn = image - kGradStep * v.col(i);
          const double re_x = x(i).real();
          const double n_up = 1.0 + 2.0 * kGradStep * re_x + kGradStep * kGradStep;
          const double n_dn = 1.0 - 2.0 * kGradStep * re_x + kGradStep * kGradStep;
          g_re = (value_of(up, n_up) - value_of(dn, n_dn)) / (2.0 * kGradStep);
        }
        {
          const Complex ih(0.0, kGradStep);
          const Vector up = image + ih * v.col(i);
          const Vector dn = image - ih * v.col(i);
          const double im_x = x(i).imag();
          const double n_up = 1.0 + 2.0 * kGradStep * im_x + kGradStep * kGradStep;
          const double n_dn = 1.0 - 2.0 * kGradStep * im_x + kGradStep * kGradStep;
          g_im = (value_of(up, n_up) - value_of(dn, n_dn)) / (2.0 * kGradStep);
        }
        grad(i) = Complex(g_re, g_im);
      }
      const double gnorm2 = grad.squaredNorm();
      if (gnorm2 < 1e-18) break;

      // backtracking line search on the sphere
      double step = 0.5;
      bool improved = false;
      for (int bt = 0; bt < 30; ++bt) {
        Vector cand = x - step * grad;
        cand /= cand.norm();
        const Vector cand_image = v * cand;
        const double fc = value_of(cand_image, 1.0);
        if (fc < fx - 1e-4 * step * gnorm2) {
          x = std::move(cand);
          image = cand_image;
          fx = fc;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;  // local minimum at gradient resolution
    }

    if (fx < best.value) {
      best.value = fx;
      best.minimizer = x;
    }
  }
  return best;
}

double tnorm_estimate(const TNormQuery& q, RandomStream rs) {
  const int k = static_cast<int>(q.a.size());
  if (k < 1) throw std::invalid_argument("tnorm: empty direction");
  if (!(q.t > 0.0) || q.t > 1.0) throw std::invalid_argument("tnorm: t must be in (0,1]");
  if (q.n < k) throw std::invalid_argument("tnorm: simulation size n >= k required");
  if (q.trials < 1) throw std::invalid_argument("tnorm: trials >= 1 required");
  const long nk = static_cast<long>(q.n) * k;
  if (nk > 4096) throw std::invalid_argument("tnorm: n k guard (<= 4096)");
  const int rank = std::clamp(static_cast<int>(std::lround(q.t * nk)), 1,
                              static_cast<int>(nk));

  // diagonal of diag(a) (x) I_n in the flat (k first, n second) convention
  RealVector diag(nk);
  for (long idx = 0; idx < nk; ++idx) diag(idx) = q.a[idx % k];

  std::vector<double> tops(q.trials);
  for (int trial = 0; trial < q.trials; ++trial) {
    RandomStream sub = rs.substream(trial);
    const Matrix iso = sample_haar_isometry(static_cast<int>(nk), rank, sub);
    Matrix scaled = iso;
    for (long r = 0; r < nk; ++r) scaled.row(r) *= diag(r);
    // lambda_max(P A P) = lambda_max(Q* A Q) for P = Q Q*
    const Matrix compressed = iso.adjoint() * scaled;
    tops[trial] = hermitian_eigenvalues(compressed).maxCoeff();
  }
  std::sort(tops.begin(), tops.end());
  const int m = q.trials;
  return m % 2 == 1 ? tops[m / 2] : 0.5 * (tops[m / 2 - 1] + tops[m / 2]);
}

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Halton point in [0,1]^(k-1), mapped to the simplex by sorted spacings.
std::vector<double> simplex_point(int index, int k) {
  if (k == 1) return {1.0};
  std::vector<double> u(k - 1);
  for (int j = 0; j < k - 1; ++j) u[j] = halton(index, kPrimes[j % 12]);
  std::sort(u.begin(), u.end());
  std::vector<double> a(k);
  a[0] = u[0];
  for (int j = 1; j < k - 1; ++j) a[j] = u[j] - u[j - 1];
  a[k - 1] = 1.0 - u[k - 2];
  return a;
}

}  // namespace

KktSupport build_kkt_support(int k, double t, int direction_count, RandomStream rs,
                             int n_sim, int trials) {
  if (k < 1) throw std::invalid_argument("kkt support: k >= 1 required");
  if (direction_count < 0)
    throw std::invalid_argument("kkt support: direction count >= 0 required");
  KktSupport support;
  support.k = k;
  support.t = t;
  // the k vertices, then the deterministic low-discrepancy interior sample
  for (int i = 0; i < k; ++i) {
    std::vector<double> e(k, 0.0);
    e[i] = 1.0;
    support.directions.push_back(std::move(e));
  }
  for (int m = 1; m <= direction_count; ++m)
    support.directions.push_back(simplex_point(m, k));
  support.tnorms.reserve(support.directions.size());
  for (std::size_t i = 0; i < support.directions.size(); ++i) {
    TNormQuery q;
    q.a = support.directions[i];
    q.t = t;
    q.n = n_sim;
    q.trials = trials;
    support.tnorms.push_back(tnorm_estimate(q, rs.substream(i)));
  }
  return support;
}

KktMembership kkt_membership(const std::vector<double>& lambda,
                             const KktSupport& support, double tolerance) {
  if (static_cast<int>(lambda.size()) != support.k)
    throw std::invalid_argument("kkt membership: dimension mismatch");
  double sum = 0.0;
  for (double v : lambda) {
    if (v < -1e-10) throw std::invalid_argument("kkt membership: lambda off the simplex");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("kkt membership: lambda off the simplex");

  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < support.directions.size(); ++i) {
    double dot = 0.0;
    for (int j = 0; j < support.k; ++j) dot += lambda[j] * support.directions[i][j];
    worst = std::min(worst, support.tnorms[i] - dot);
  }
  return {worst >= -tolerance, worst};
}

KktMembership kkt_membership(const std::vector<double>& lambda, double t,
                             int direction_count, RandomStream rs, int n_sim,
                             int trials, double tolerance) {
  const KktSupport support = build_kkt_support(static_cast<int>(lambda.size()), t,
                                               direction_count, rs, n_sim, trials);
  return kkt_membership(lambda, support, tolerance);
}

}  // namespace rmtq
