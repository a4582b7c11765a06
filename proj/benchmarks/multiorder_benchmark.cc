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

#include <benchmark/benchmark.h>

#include "multiorder/asymptotic.h"
#include "multiorder/dynamics.h"
#include "multiorder/multiorder.h"
#include "multiorder/prf.h"

namespace multiorder {
namespace {

void BM_PhiloxHash(benchmark::State& state) {
  const Prf prf(1);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(prf.Hash(PrfDomain::kExperiment, {i++, 7}));
}
BENCHMARK(BM_PhiloxHash);

void BM_HierarchicalAt(benchmark::State& state) {
  const Group group(static_cast<GroupKind>(state.range(0)));
  const HierarchicalSource source(group, 3);
  OrderIndex k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(source.at(k));
    k = (k + 7919) % 1000000;
  }
}
BENCHMARK(BM_HierarchicalAt)->Arg(static_cast<int>(GroupKind::kZ2))->Arg(static_cast<int>(GroupKind::kH3));

void BM_HierarchicalIndexOf(benchmark::State& state) {
  const Group group(static_cast<GroupKind>(state.range(0)));
  const HierarchicalSource source(group, 3);
  std::int64_t i = 0;
  for (auto _ : state) {
    const std::int64_t z = group.dimension() == 3 ? i % 11 - 5 : 0;
    benchmark::DoNotOptimize(source.index_of(group.Make(i % 101 - 50, i % 37 - 18, z)));
    ++i;
  }
}
BENCHMARK(BM_HierarchicalIndexOf)->Arg(static_cast<int>(GroupKind::kZ2))->Arg(static_cast<int>(GroupKind::kH3));

void BM_IterateSuccessor(benchmark::State& state) {
  const Group group(GroupKind::kZ2);
  const ProductPoint p{ShiftConfiguration::Random(group, 2, 1),
                       sample({group, SamplerFamily::kHierarchical}, 1)};
  for (auto _ : state) benchmark::DoNotOptimize(iterate_S(p, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_IterateSuccessor)->Arg(64)->Arg(4096);

void BM_ConstructPairAndProfile(benchmark::State& state) {
  const Group group(GroupKind::kZ2);
  const LazyOrder order = sample({group, SamplerFamily::kHierarchical}, 1);
  const ShiftConfiguration x = ShiftConfiguration::Random(group, 2, 1);
  for (auto _ : state) {
    const ConstructedPair pair = construct_pair(x, order, {group.identity()});
    benchmark::DoNotOptimize(pair_profile(x, pair.y, order, 512, 8, &pair.certificate));
  }
}
BENCHMARK(BM_ConstructPairAndProfile);

void BM_OrderMetric(benchmark::State& state) {
  const Group group(GroupKind::kH3);
  const LazyOrder a = sample({group, SamplerFamily::kHierarchical}, 1);
  const LazyOrder b = sample({group, SamplerFamily::kHierarchical}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(order_metric(a, b, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_OrderMetric)->Arg(8)->Arg(64);

}  // namespace
}  // namespace multiorder

BENCHMARK_MAIN();
