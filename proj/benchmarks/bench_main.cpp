// SPDX-License-Identifier: Apache-2.0
//
// cnd - compressed neighbor discovery for wireless networks
// Copyright (C) 2026 The cnd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "cnd/channel.hpp"
#include "cnd/chirp_decoder.hpp"
#include "cnd/group_testing.hpp"
#include "cnd/random_signatures.hpp"
#include "cnd/rm_code.hpp"
#include "cnd/rng.hpp"

namespace {

using namespace cnd;

void BM_Fwht(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    KeyedStream rng(1, StreamTag::test_data);
    std::vector<cplx> v(n);
    for (auto& z : v) z = rng.complex_normal();
    for (auto _ : state) {
        fwht_inplace(v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fwht)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oNLogN);

// m = 10 superposition of `k` random-gain RM signatures at 20 dB.
MeasurementVector rm_measurement(const RmCodebook& book, int k, std::uint64_t seed) {
    KeyedStream rng(seed, StreamTag::test_data);
    std::vector<OnOffSignature> sigs;
    SupportVector x;
    while (static_cast<int>(x.entries.size()) < k) {
        const Nia n = rng.below(book.population());
        if (x.entries.count(n)) continue;
        sigs.push_back(book.signature(n));
        x.entries[n] = sample_neighbor_gain(3.0, 0.05, rng.next_u64()).value();
    }
    return synthesize_received(sigs, x, 100.0, book.length(), seed);
}

void BM_ChirpDecode(benchmark::State& state) {
    RmCodebookParams p;
    p.m = p.n1 = p.n2 = 10;
    const RmCodebook book(p);
    const int k = static_cast<int>(state.range(0));
    const auto y = rm_measurement(book, k, 7);
    const ChirpParams params = ChirpParams::defaults(k, 100.0, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(chirp_decode(y, book, params));
    state.SetComplexityN(k);
}
BENCHMARK(BM_ChirpDecode)->RangeMultiplier(2)->Range(1, 32)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ChirpDecodeOrder(benchmark::State& state) {
    RmCodebookParams p;
    p.m = p.n1 = p.n2 = static_cast<unsigned>(state.range(0));
    const RmCodebook book(p);
    const auto y = rm_measurement(book, 4, 8);
    const ChirpParams params = ChirpParams::defaults(4, 100.0, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(chirp_decode(y, book, params));
}
BENCHMARK(BM_ChirpDecodeOrder)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_GroupTest(benchmark::State& state) {
    const RandomCodebook rb(static_cast<std::uint64_t>(state.range(0)), 1024, 0.0371);
    const OnOffCodebook book = rb.materialize();
    KeyedStream rng(9, StreamTag::test_data);
    MeasurementVector y;
    for (int m = 0; m < 1024; ++m) y.samples.push_back(rng.complex_normal() * 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(tolerance_group_test(y, book, 3.0, 3));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GroupTest)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMicrosecond)->Complexity();

void BM_Materialize(benchmark::State& state) {
    const RandomCodebook rb(10000, 1024, 0.0371);
    for (auto _ : state) benchmark::DoNotOptimize(rb.materialize());
}
BENCHMARK(BM_Materialize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
