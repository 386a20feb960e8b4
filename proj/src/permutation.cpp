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

#include "rmtq/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rmtq {

IntegerPartition::IntegerPartition(std::vector<int> p) : parts(std::move(p)) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be non-increasing");
  }
}

int IntegerPartition::weight() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

bool IntegerPartition::operator<(const IntegerPartition& other) const {
  return parts < other.parts;
}

std::string IntegerPartition::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i];
  }
  os << ']';
  return os.str();
}

std::vector<IntegerPartition> IntegerPartition::partitions_of(int p) {
  if (p < 0) throw std::invalid_argument("partitions_of: negative weight");
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  // descending parts, largest first
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, p, p);
  return out;
}

Permutation Permutation::from_one_line(const std::vector<int>& images) {
  const int p = static_cast<int>(images.size());
  if (p < 1) throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<int> zero(p);
  std::vector<bool> seen(p, false);
  for (int i = 0; i < p; ++i) {
    const int v = images[i];
    if (v < 1 || v > p) throw std::invalid_argument("permutation image out of range");
    if (seen[v - 1]) throw std::invalid_argument("permutation images must be a bijection");
    seen[v - 1] = true;
    zero[i] = v - 1;
  }
  return Permutation(std::move(zero));
}

Permutation Permutation::identity(int degree) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int degree, int a, int b) {
  if (a < 1 || b < 1 || a > degree || b > degree || a == b)
    throw std::invalid_argument("invalid transposition");
  Permutation t = identity(degree);
  std::swap(t.images_[a - 1], t.images_[b - 1]);
  return t;
}

Permutation Permutation::full_cycle(int degree) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
  return Permutation(std::move(img));
}

std::vector<Permutation> Permutation::all(int degree) {
  if (degree < 1 || degree > 9)
    throw std::invalid_argument("Permutation::all supports 1 <= degree <= 9");
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Permutation Permutation::compose(const Permutation& tau) const {
  if (degree() != tau.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[i] = images_[tau.images_[i]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(img));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  const int p = degree();
  std::vector<bool> seen(p, false);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < p; ++start) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      cyc.push_back(cur + 1);
      cur = images_[cur];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

IntegerPartition Permutation::cycle_type() const {
  std::vector<int> lens;
  for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
  std::sort(lens.begin(), lens.end(), std::greater<int>());
  return IntegerPartition(std::move(lens));
}

int Permutation::cycle_count() const {
  const int p = degree();
  std::vector<bool> seen(p, false);
  int count = 0;
  for (int start = 0; start < p; ++start) {
    if (seen[start]) continue;
    ++count;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = images_[cur];
    }
  }
  return count;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i] + 1;
  }
  os << ']';
  return os.str();
}

int permutation_distance(const Permutation& sigma, const Permutation& tau) {
  return sigma.inverse().compose(tau).length();
}

int SetPartition::ground_size() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

bool SetPartition::is_noncrossing() const {
  // a<b<c<d with {a,c} and {b,d} in distinct blocks is a crossing
  const int n = ground_size();
  std::vector<int> block_of(n + 1, -1);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    for (int x : blocks[bi]) block_of[x] = static_cast<int>(bi);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d)
          if (block_of[a] == block_of[c] && block_of[b] == block_of[d] &&
              block_of[a] != block_of[b])
            return false;
  return true;
}

namespace {

void nc_emit(const std::vector<std::vector<int>>& acc, std::vector<SetPartition>& out) {
  SetPartition sp{acc};
  std::sort(sp.blocks.begin(), sp.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  out.push_back(std::move(sp));
}

void nc_interval(int lo, int hi, std::vector<std::vector<int>>& acc,
                 std::vector<SetPartition>& out);

// Grow the block of the interval minimum. Between consecutive block members
// the open gap is an independent sub-interval, as is the tail once the block
// closes; this block-first recursion visits each non-crossing partition
// exactly once, at Catalan (not Bell) cost.
void nc_extend_block(int hi, std::vector<int>& block, int next_min,
                     std::vector<std::vector<int>>& acc,
                     std::vector<SetPartition>& out) {
  acc.push_back(block);
  nc_interval(next_min, hi, acc, out);
  acc.pop_back();
  for (int b = next_min; b <= hi; ++b) {
    std::vector<SetPartition> gap;
    std::vector<std::vector<int>> gap_acc;
    nc_interval(next_min, b - 1, gap_acc, gap);
    block.push_back(b);
    for (const auto& gp : gap) {
      for (const auto& blk : gp.blocks) acc.push_back(blk);
      nc_extend_block(hi, block, b + 1, acc, out);
      acc.resize(acc.size() - gp.blocks.size());
    }
    block.pop_back();
  }
}

void nc_interval(int lo, int hi, std::vector<std::vector<int>>& acc,
                 std::vector<SetPartition>& out) {
  if (lo > hi) {
    nc_emit(acc, out);
    return;
  }
  std::vector<int> block{lo};
  nc_extend_block(hi, block, lo + 1, acc, out);
}

}  // namespace

std::vector<SetPartition> noncrossing_partitions(int p) {
  if (p < 1 || p > 12)
    throw std::invalid_argument("noncrossing_partitions supports 1 <= p <= 12");
  std::vector<SetPartition> out;
  std::vector<std::vector<int>> acc;
  nc_interval(1, p, acc, out);
  return out;
}

std::int64_t catalan(int i) {
  if (i < 0 || i > 32) throw std::invalid_argument("catalan: index out of range");
  // C_i = C_{i-1} * 2(2i-1)/(i+1)
  std::int64_t c = 1;
  for (int k = 1; k <= i; ++k) c = c * 2 * (2 * k - 1) / (k + 1);
  return c;
}

std::int64_t mobius(const IntegerPartition& cycle_type) {
  std::int64_t m = 1;
  for (int d : cycle_type.parts) {
    m *= catalan(d - 1);
    if (d % 2 == 0) m = -m;
  }
  return m;
}

std::int64_t mobius(const Permutation& sigma) { return mobius(sigma.cycle_type()); }

}  // namespace rmtq
