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

#ifndef RMTQ_ENSEMBLES_HPP
#define RMTQ_ENSEMBLES_HPP

#include <utility>
#include <vector>

#include "rmtq/channels.hpp"
#include "rmtq/random.hpp"
#include "rmtq/tensorlin.hpp"

namespace rmtq {

/// rows x cols matrix of i.i.d. standard complex Gaussians (E|g|^2 = 1),
/// filled column-major.
Matrix sample_ginibre(int rows, int cols, RandomStream& rs);

/// W = G G* for a d x s Ginibre G; Wishart of parameters (d, s).
Matrix sample_wishart(int d, int s, RandomStream& rs);

/// Haar-distributed unitary via QR of a Ginibre matrix with the R-diagonal
/// phase normalization (plain QR is not Haar).
Matrix sample_haar_unitary(int n, RandomStream& rs);

/// First `cols` columns of a Haar unitary of size `rows` (rows >= cols),
/// sampled directly from a thin QR.
Matrix sample_haar_isometry(int rows, int cols, RandomStream& rs);

/// Uniform point on the unit sphere of C^d (normalized Gaussian vector).
PureState sample_pure_uniform(int d, RandomStream& rs);

/// Induced measure nu_{d,s}: rho = G G*/Tr(G G*), G Ginibre d x s.
DensityMatrix sample_induced(int d, int s, RandomStream& rs);

/// Bures measure: (I+U) A A* (I+U)* normalized, A Ginibre d x d and U an
/// independent Haar unitary.
DensityMatrix sample_bures(int d, RandomStream& rs);

/// Random graph state: one maximally entangled pair of local dimension N per
/// edge, mixed by independent Haar unitaries on the vertices. Subsystems are
/// the 2m edge endpoints; edge j (0-based) owns subsystems 2j (its first
/// vertex) and 2j+1 (its second). `keep[s]` marks subsystem s as surviving
/// (S); the rest (T) are traced out.
struct GraphStateSpec {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based vertex labels
  int local_dim = 2;                       // N
  std::vector<bool> keep;                  // size 2m

  int subsystem_count() const { return static_cast<int>(2 * edges.size()); }
  /// true when every vertex is kept or traced as a whole
  bool is_adapted() const;
  /// number of edges with one endpoint kept and one traced
  int boundary_area() const;
};

/// Marginal of the graph state on the kept subsystems. Guards: the full
/// 2m-subsystem state needs N^{2m} <= 2^20 and the marginal N^{|S|} <= 4096.
DensityMatrix sample_graph_state_marginal(const GraphStateSpec& spec, RandomStream& rs);

/// Random matrix product state in the bulk: site tensors A_i = <0|U|i> from
/// a Haar unitary U on C^{phys (x) bond}, boundary operators L (PSD,
/// operator norm <= 1) and R (PSD, unit trace). The returned state is the
/// normalized reduction of the length-`chain_length` bulk onto a centered
/// window of `window` sites.
struct MpsSpec {
  int phys_dim = 2;      // d
  int bond_dim = 2;      // D
  int window = 1;        // l
  int chain_length = 8;  // N
  Matrix left_boundary;  // D x D
  Matrix right_boundary; // D x D

  /// L = I, R = I/D.
  static MpsSpec standard(int d, int D, int l, int N);
};

/// Guards: phys_dim * bond_dim <= 512 and phys_dim^window <= 256.
DensityMatrix sample_mps_bulk_marginal(const MpsSpec& spec, RandomStream& rs);

/// Random isometry channel: V = first d columns of a Haar unitary on
/// C^k (x) C^n, Phi(X) = Tr_ancilla(V X V*). Requires d <= n k.
QuantumChannel sample_random_isometry_channel(int ancilla_dim, int out_dim,
                                              int in_dim, RandomStream& rs);

/// Sum of `count` independent rank-one product projections on (C^d)^(x legs).
/// Guard: d^legs <= 4096.
Matrix sample_product_projection_sum(int d, int legs, int count, RandomStream& rs);

}  // namespace rmtq

#endif  // RMTQ_ENSEMBLES_HPP
