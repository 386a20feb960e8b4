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

#include "rmtq/random.hpp"

#include <cmath>
#include <numbers>

namespace rmtq {

namespace {
constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73Bull;

// splitmix64 finalizer; used to decorrelate substream ids
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}
}  // namespace

std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> counter,
                                           std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 p0 = static_cast<unsigned __int128>(kPhiloxM0) * counter[0];
    const unsigned __int128 p1 = static_cast<unsigned __int128>(kPhiloxM1) * counter[2];
    counter = {static_cast<std::uint64_t>(p1 >> 64) ^ counter[1] ^ key[0],
               static_cast<std::uint64_t>(p1),
               static_cast<std::uint64_t>(p0 >> 64) ^ counter[3] ^ key[1],
               static_cast<std::uint64_t>(p0)};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return counter;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

RandomStream RandomStream::substream(std::uint64_t child_id) const {
  return RandomStream(seed_, mix64(stream_id_ * 0x9E3779B97F4A7C15ull + child_id + 1));
}

std::uint64_t RandomStream::next_u64() {
  if (buffer_pos_ == 4) {
    ++block_;
    buffer_ = philox4x64_10({block_, stream_id_, 0, 0}, {seed_, stream_id_});
    buffer_pos_ = 0;
  }
  return buffer_[buffer_pos_++];
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_gaussian() {
  if (have_cached_gaussian_) {
    have_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = 1.0 - next_double();  // (0, 1]
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(theta);
  have_cached_gaussian_ = true;
  return r * std::cos(theta);
}

std::complex<double> RandomStream::next_complex_gaussian() {
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-std::log(u1));  // so that E|g|^2 = 1
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace rmtq
