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

#ifndef RMTQ_CHANNELS_HPP
#define RMTQ_CHANNELS_HPP

#include <string>
#include <vector>

#include "rmtq/random.hpp"
#include "rmtq/tensorlin.hpp"

namespace rmtq {

enum class ChannelForm { Stinespring, Kraus, Choi };

/// Completely positive trace-preserving map in one of three interconvertible
/// representations.
///
/// Dimensions: input d, output k, ancilla n. Conventions (see tensorlin.hpp
/// for the flattening):
///   - Stinespring isometry V: C^d -> C^k (x) C^n, Phi(X) = Tr_ancilla(V X V*),
///     the ancilla being the second tensor factor;
///   - Kraus operators L_1..L_m (k x d each), Phi(X) = sum L_i X L_i*;
///   - Choi matrix C = sum_ij E_ij (x) Phi(E_ij), a dk x dk matrix over the
///     (d, k) split (input first factor). Tr over the output factor is I_d.
///
/// Validation on construction: trace preservation / Choi positivity to 1e-9.
class QuantumChannel {
 public:
  static QuantumChannel from_isometry(Matrix v, int out_dim, int ancilla_dim);
  static QuantumChannel from_kraus(std::vector<Matrix> kraus);
  static QuantumChannel from_choi(Matrix choi, int in_dim, int out_dim);
  static QuantumChannel identity(int d);
  /// X -> Tr(X) I/d on M_d.
  static QuantumChannel depolarizing(int d);

  ChannelForm form() const { return form_; }
  int in_dim() const { return d_; }
  int out_dim() const { return k_; }
  /// Ancilla dimension (equals the Kraus count for Kraus form).
  int ancilla_dim() const { return n_; }

  /// Representation change; round trips reproduce the channel action on a
  /// basis of inputs to 1e-9.
  QuantumChannel to(ChannelForm target) const;

  const Matrix& isometry() const;           // requires Stinespring form
  const std::vector<Matrix>& kraus() const;  // requires Kraus form
  const Matrix& choi() const;               // requires Choi form

  Matrix apply_to(const Matrix& x) const;
  DensityMatrix apply(const DensityMatrix& rho) const;
  /// Phi(x x*) for a (not necessarily normalized) vector input; the output
  /// is normalized by |x|^2.
  Matrix apply_pure(const Vector& x) const;

  /// Entrywise complex conjugate channel.
  QuantumChannel conjugate() const;

 private:
  QuantumChannel(ChannelForm f, int d, int k, int n)
      : form_(f), d_(d), k_(k), n_(n) {}
  ChannelForm form_;
  int d_, k_, n_;
  Matrix isometry_;             // Stinespring
  std::vector<Matrix> kraus_;   // Kraus
  Matrix choi_;                 // Choi
};

/// Z = [Phi (x) conj(Phi)](Omega_d) for a Stinespring-form channel;
/// a density matrix of size out_dim^2.
DensityMatrix conjugate_pair_bell_output(const QuantumChannel& ch);

/// Multi-start projected-gradient upper bound on the minimum output Renyi-p
/// entropy, minimizing over pure inputs (which suffices by concavity).
struct MoeEstimate {
  double value = 0.0;   // best H^p(Phi(x x*)) found
  Vector minimizer;     // the best input vector
};
MoeEstimate moe_estimate(const QuantumChannel& ch, double p, int restarts,
                         int iterations, RandomStream rs);

/// Monte Carlo estimate of the (t)-norm of a diagonal direction a in R^k:
/// median over trials of lambda_max(P (diag(a) (x) I_n) P) with P a Haar
/// random projection of rank round(t n k).
struct TNormQuery {
  std::vector<double> a;  // direction, length k
  double t = 1.0;         // in (0, 1]
  int n = 300;            // simulation size, n >= k recommended
  int trials = 11;        // median over trials
};
double tnorm_estimate(const TNormQuery& q, RandomStream rs);

/// Precomputed support-function table of the limiting output body K_{k,t}:
/// directions a in the simplex (the k vertices plus a deterministic
/// low-discrepancy interior sample) with their estimated (t)-norms.
struct KktSupport {
  int k = 0;
  double t = 1.0;
  std::vector<std::vector<double>> directions;
  std::vector<double> tnorms;
};
KktSupport build_kkt_support(int k, double t, int direction_count, RandomStream rs,
                             int n_sim = 300, int trials = 11);

struct KktMembership {
  bool member = false;
  double worst_margin = 0.0;  // min over directions of tnorm(a) - <lambda, a>
};
/// lambda must lie on the simplex within 1e-10. Margins below -tolerance
/// count as non-membership; the default reflects finite-n estimate bias.
KktMembership kkt_membership(const std::vector<double>& lambda,
                             const KktSupport& support, double tolerance = 0.03);
KktMembership kkt_membership(const std::vector<double>& lambda, double t,
                             int direction_count, RandomStream rs,
                             int n_sim = 300, int trials = 11,
                             double tolerance = 0.03);

/// Flat binary channel record (dims + Kraus list), little-endian:
/// eight u64 header fields (magic "RMTQCHAN", version, d, k, n, kraus count,
/// two reserved zeros) followed by the Kraus matrices as column-major
/// complex doubles (re, im). Byte layout documented in the README.
void write_channel(const std::string& path, const QuantumChannel& ch);
QuantumChannel read_channel(const std::string& path);

}  // namespace rmtq

#endif  // RMTQ_CHANNELS_HPP
