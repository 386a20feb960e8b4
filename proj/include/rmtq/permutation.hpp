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

#ifndef RMTQ_PERMUTATION_HPP
#define RMTQ_PERMUTATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rmtq {

/// Cycle type of a permutation: parts sorted non-increasing, all positive.
struct IntegerPartition {
  std::vector<int> parts;

  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<int> p);

  int weight() const;
  bool operator==(const IntegerPartition&) const = default;
  bool operator<(const IntegerPartition& other) const;
  std::string to_string() const;

  /// All partitions of p, in a fixed deterministic order.
  static std::vector<IntegerPartition> partitions_of(int p);
};

/// Element of the symmetric group S_p, stored in one-line form.
///
/// Points are 1-based in the public API (matching the usual cycle
/// notation); storage is 0-based internally. Values are immutable
/// after construction.
class Permutation {
 public:
  /// One-line form: images[i-1] is the image of point i (1-based values).
  static Permutation from_one_line(const std::vector<int>& images);
  static Permutation identity(int degree);
  /// The transposition (a b) in S_degree, a != b, 1-based.
  static Permutation transposition(int degree, int a, int b);
  /// The full cycle (1 2 ... degree).
  static Permutation full_cycle(int degree);
  /// Every element of S_degree, in lexicographic one-line order (degree <= 9).
  static std::vector<Permutation> all(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  /// Image of the 1-based point i.
  int operator()(int i) const { return images_[i - 1] + 1; }

  /// Group product: (*this) then-after tau, i.e. (sigma*tau)(i) = sigma(tau(i)).
  Permutation compose(const Permutation& tau) const;
  Permutation inverse() const;

  /// Cycles as 1-based point lists, each starting at its minimum,
  /// ordered by that minimum.
  std::vector<std::vector<int>> cycles() const;
  IntegerPartition cycle_type() const;
  int cycle_count() const;
  /// |sigma| = degree - #cycles; equals the minimal number of
  /// transpositions multiplying to sigma.
  int length() const { return degree() - cycle_count(); }

  bool is_identity() const;
  bool operator==(const Permutation&) const = default;
  std::string to_string() const;

 private:
  explicit Permutation(std::vector<int> zero_based) : images_(std::move(zero_based)) {}
  std::vector<int> images_;  // 0-based
};

/// d(sigma, tau) = |sigma^{-1} tau|, a bi-invariant metric on S_p.
int permutation_distance(const Permutation& sigma, const Permutation& tau);

/// Partition of {1..p} into disjoint blocks covering every point.
struct SetPartition {
  std::vector<std::vector<int>> blocks;  // each block sorted, blocks ordered by minimum

  int ground_size() const;
  bool is_noncrossing() const;
  bool operator==(const SetPartition&) const = default;
};

/// All non-crossing partitions of {1..p}; |result| = Catalan(p).
/// Guarded to 1 <= p <= 12.
std::vector<SetPartition> noncrossing_partitions(int p);

/// Catalan number C_i = (2i)! / ((i+1)! i!), i <= 32.
std::int64_t catalan(int i);

/// Mob(sigma): product over cycles of length d of (-1)^(d-1) C_{d-1}.
std::int64_t mobius(const Permutation& sigma);
std::int64_t mobius(const IntegerPartition& cycle_type);

}  // namespace rmtq

#endif  // RMTQ_PERMUTATION_HPP
