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
#include <set>

#include "doctest.h"

using namespace rmtq;

TEST_SUITE("random") {

TEST_CASE("philox known answers") {
  // reference vectors generated with numpy.random.Philox (counter-based
  // 4x64, 10 rounds, Random123 constants)
  {
    const auto out = philox4x64_10({1, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x02f4ba6408e4d89bull);
    CHECK(out[1] == 0x3dd62b0b9ca8c5b2ull);
    CHECK(out[2] == 0x1c8667a55d902e79ull);
    CHECK(out[3] == 0x907d7a052fd5b4dcull);
  }
  {
    const auto out = philox4x64_10({1, 0, 0, 0}, {0xdeadbeef12345678ull, 0});
    CHECK(out[0] == 0x01e08b9944fc9ce9ull);
    CHECK(out[1] == 0x4dd35999ef97e4c4ull);
    CHECK(out[2] == 0xfb4385fe6262b926ull);
    CHECK(out[3] == 0xe8ca5d2e2ace8c50ull);
  }
  {
    const auto out = philox4x64_10({1, 1, 0, 0}, {1, 0});
    CHECK(out[0] == 0x5bad640d1d8c1c0cull);
    CHECK(out[1] == 0x4d7adc667141a3aaull);
    CHECK(out[2] == 0xd30b33c123aa38cdull);
    CHECK(out[3] == 0x44a14dc3d979eb35ull);
  }
}

TEST_CASE("identical (seed, stream) reproduce identical draws") {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomStream c(42, 7), d(42, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.next_gaussian() == d.next_gaussian());
    CHECK(c.next_complex_gaussian() == d.next_complex_gaussian());
  }
}

TEST_CASE("distinct stream ids give distinct streams") {
  RandomStream a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    if (va == b.next_u64()) ++same_ab;
    if (va == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("substreams are deterministic and mutually distinct") {
  const RandomStream root(123);
  RandomStream a1 = root.substream(5);
  RandomStream a2 = root.substream(5);
  CHECK(a1.next_u64() == a2.next_u64());

  std::set<std::uint64_t> firsts;
  for (int child = 0; child < 100; ++child)
    firsts.insert(root.substream(child).next_u64());
  CHECK(firsts.size() == 100);

  // nested derivation differs from the parent
  RandomStream child = root.substream(1);
  RandomStream grandchild = child.substream(1);
  RandomStream fresh_child = root.substream(1);
  CHECK(grandchild.next_u64() != fresh_child.next_u64());
}

TEST_CASE("uniform doubles live in [0,1) with the right mean") {
  RandomStream rs(7, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rs.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  // SE of the mean is 1/sqrt(12 n) ~ 9.1e-4
  CHECK(std::abs(sum / n - 0.5) < 3.0 * 9.13e-4);
}

TEST_CASE("gaussian moments") {
  RandomStream rs(8, 0);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rs.next_gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq / n - 1.0) < 3.0 * std::sqrt(2.0 / n));

  double abs2 = 0.0, re = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto g = rs.next_complex_gaussian();
    abs2 += std::norm(g);
    re += g.real();
  }
  CHECK(std::abs(abs2 / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(re / n) < 3.0 * std::sqrt(0.5 / n));
}

}  // TEST_SUITE
