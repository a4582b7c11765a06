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

#ifndef MULTIORDER_PRF_H_
#define MULTIORDER_PRF_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace multiorder {

// Philox4x32-10 block function (Salmon et al., Random123). Stateless.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr int kRounds = 10;
  static Counter Encrypt(Counter counter, Key key);
};

// Domains separate independent uses of one seed.
enum class PrfDomain : std::uint32_t {
  kSplit = 1,
  kPairSwapPhase = 2,
  kPairSwapBlock = 3,
  kHierarchyOffset = 4,
  kHierarchyOrientation = 5,
  kConfiguration = 6,
  kTailCompletion = 7,
  kExperiment = 8,
};

// Counter-based pseudorandom function keyed by a 64-bit seed.
//
// Hash(domain, words) is a deterministic function of (seed, domain, words);
// any coin of any sampler can be recomputed in O(1) without generating the
// ones before it. Split(stream) yields an independent child seed.
class Prf {
 public:
  explicit Prf(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t Hash(PrfDomain domain, std::span<const std::uint64_t> words) const;
  std::uint64_t Hash(PrfDomain domain, std::initializer_list<std::uint64_t> words) const {
    return Hash(domain, std::span<const std::uint64_t>(words.begin(), words.size()));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform(PrfDomain domain, std::initializer_list<std::uint64_t> words) const;

  Prf Split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
};

}  // namespace multiorder

#endif  // MULTIORDER_PRF_H_
