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

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "rmtq/channels.hpp"

namespace rmtq {

namespace {

// "RMTQCHAN" as bytes
constexpr std::uint64_t kMagic = 0x4E41484351544D52ull;
constexpr std::uint64_t kVersion = 1;

void put_u64_le(std::ostream& os, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes, 8);
}

std::uint64_t get_u64_le(std::istream& is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char*>(bytes), 8);
  if (!is) throw std::runtime_error("channel file: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64_le(std::ostream& os, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, 8);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  put_u64_le(os, bits);
}

double get_f64_le(std::istream& is) {
  std::uint64_t bits = get_u64_le(is);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  double d;
  std::memcpy(&d, &bits, 8);
  return d;
}

}  // namespace

void write_channel(const std::string& path, const QuantumChannel& ch) {
  const QuantumChannel kr =
      ch.form() == ChannelForm::Kraus ? ch : ch.to(ChannelForm::Kraus);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  put_u64_le(os, kMagic);
  put_u64_le(os, kVersion);
  put_u64_le(os, static_cast<std::uint64_t>(kr.in_dim()));
  put_u64_le(os, static_cast<std::uint64_t>(kr.out_dim()));
  put_u64_le(os, static_cast<std::uint64_t>(ch.ancilla_dim()));
  put_u64_le(os, static_cast<std::uint64_t>(kr.kraus().size()));
  put_u64_le(os, 0);
  put_u64_le(os, 0);
  for (const Matrix& l : kr.kraus())
    for (int j = 0; j < l.cols(); ++j)
      for (int i = 0; i < l.rows(); ++i) {
        put_f64_le(os, l(i, j).real());
        put_f64_le(os, l(i, j).imag());
      }
  if (!os) throw std::runtime_error("write failed: " + path);
}

QuantumChannel read_channel(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  if (get_u64_le(is) != kMagic) throw std::runtime_error("channel file: bad magic");
  if (get_u64_le(is) != kVersion)
    throw std::runtime_error("channel file: unsupported version");
  const auto d = static_cast<int>(get_u64_le(is));
  const auto k = static_cast<int>(get_u64_le(is));
  get_u64_le(is);  // ancilla (informational; the Kraus count is authoritative)
  const auto count = static_cast<std::size_t>(get_u64_le(is));
  get_u64_le(is);
  get_u64_le(is);
  if (d < 1 || k < 1 || count < 1 || count > (1u << 20))
    throw std::runtime_error("channel file: bad dimensions");
  std::vector<Matrix> kraus(count, Matrix(k, d));
  for (auto& l : kraus)
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < k; ++i) {
        const double re = get_f64_le(is);
        const double im = get_f64_le(is);
        l(i, j) = Complex(re, im);
      }
  if (!is) throw std::runtime_error("channel file: truncated payload");
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace rmtq
