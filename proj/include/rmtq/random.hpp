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

#ifndef RMTQ_RANDOM_HPP
#define RMTQ_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace rmtq {

/// One block of the Philox-4x64 keyed bijection with 10 rounds
/// (constants as in Random123). Exposed for known-answer tests.
std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> counter,
                                           std::array<std::uint64_t, 2> key);

/// Counter-based pseudo-random stream keyed by (seed, stream_id).
///
/// Identical (seed, stream_id) reproduce identical draws; distinct
/// stream ids give statistically independent streams, so parallel trials
/// can draw from disjoint replayable streams regardless of scheduling.
/// Copyable value type; copies continue independently from the copy point.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Derived stream, independent of this one and of other child ids.
  RandomStream substream(std::uint64_t child_id) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double next_double();
  /// Standard normal via Box-Muller.
  double next_gaussian();
  /// Standard complex Gaussian with E|g|^2 = 1 (re, im ~ N(0, 1/2)).
  std::complex<double> next_complex_gaussian();

 private:
  std::uint64_t seed_, stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int buffer_pos_ = 4;  // empty
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace rmtq

#endif  // RMTQ_RANDOM_HPP
