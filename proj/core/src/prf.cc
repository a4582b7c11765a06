// Copyright 2026 The Multiorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multiorder/prf.h"

namespace multiorder {
namespace {

constexpr std::uint32_t kMultiplier0 = 0xD2511F53;
constexpr std::uint32_t kMultiplier1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::Encrypt(Counter counter, Key key) {
  for (int round = 0; round < kRounds; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kMultiplier0, counter[0], hi0, lo0);
    MulHiLo(kMultiplier1, counter[2], hi1, lo1);
    counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

std::uint64_t Prf::Hash(PrfDomain domain, std::span<const std::uint64_t> words) const {
  const Philox4x32::Key key = {static_cast<std::uint32_t>(seed_),
                               static_cast<std::uint32_t>(seed_ >> 32)};
  Philox4x32::Counter state = {static_cast<std::uint32_t>(domain),
                               static_cast<std::uint32_t>(words.size()), 0, 0};
  state = Philox4x32::Encrypt(state, key);
  // Absorb two words per block; chaining keeps distinct inputs distinct.
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t a = words[i];
    const std::uint64_t b = (i + 1 < words.size()) ? words[i + 1] : 0;
    state[0] ^= static_cast<std::uint32_t>(a);
    state[1] ^= static_cast<std::uint32_t>(a >> 32);
    state[2] ^= static_cast<std::uint32_t>(b);
    state[3] ^= static_cast<std::uint32_t>(b >> 32);
    state = Philox4x32::Encrypt(state, key);
  }
  return (static_cast<std::uint64_t>(state[1]) << 32) | state[0];
}

double Prf::Uniform(PrfDomain domain, std::initializer_list<std::uint64_t> words) const {
  return static_cast<double>(Hash(domain, words) >> 11) * 0x1.0p-53;
}

Prf Prf::Split(std::uint64_t stream) const {
  return Prf(Hash(PrfDomain::kSplit, {stream}));
}

}  // namespace multiorder
