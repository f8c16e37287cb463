// Copyright 2026 The cliff Authors.
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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "cliff/confcal.hpp"
#include "cliff/genkit.hpp"
#include "cliff/linguo.hpp"
#include "cliff/objectives.hpp"
#include "cliff/rng.hpp"

namespace {

using cliff::RngState;
using cliff::Vector;

std::vector<Vector> random_vectors(RngState& rng, std::size_t n, std::size_t d) {
  std::vector<Vector> out(n, Vector(d));
  for (auto& v : out)
    for (auto& x : v) x = rng.uniform() * 2.0 - 1.0;
  return out;
}

// Loss plus gradients for |P| = 3 and a growing negative set.
void BM_ContrastiveLoss(benchmark::State& state) {
  RngState rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto nn = static_cast<std::size_t>(state.range(1));
  const auto pos = random_vectors(rng, 3, d);
  const auto neg = random_vectors(rng, nn, d);
  for (auto _ : state) benchmark::DoNotOptimize(cliff::contrastive_loss(pos, neg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(3 * (3 + nn - 1)));
}
BENCHMARK(BM_ContrastiveLoss)->Args({16, 5})->Args({256, 5})->Args({768, 4})->Args({768, 64});

void BM_RougeL(benchmark::State& state) {
  RngState rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> a(n), b(n);
  for (auto& w : a) w = "w" + std::to_string(rng.below(50));
  for (auto& w : b) w = "w" + std::to_string(rng.below(50));
  for (auto _ : state) benchmark::DoNotOptimize(cliff::rouge_l(a, b));
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RougeL)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_NucleusFilter(benchmark::State& state) {
  RngState rng(3);
  cliff::Distribution dist;
  double total = 0;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const double w = rng.uniform();
    dist["t" + std::to_string(i)] = w;
    total += w;
  }
  for (auto& [k, v] : dist) v /= total;
  for (auto _ : state) benchmark::DoNotOptimize(cliff::nucleus_filter(dist, 0.7));
}
BENCHMARK(BM_NucleusFilter)->RangeMultiplier(8)->Range(64, 32768);

void BM_MatchEntities(benchmark::State& state) {
  RngState rng(4);
  cliff::Gazetteer gaz;
  for (int i = 0; i < 2000; ++i) {
    std::string s = "n" + std::to_string(i);
    if (i % 3 == 0) s += " n" + std::to_string(i + 1);
    gaz.add(s, "GPE", "d");
  }
  std::vector<std::string> words(static_cast<std::size_t>(state.range(0)));
  for (auto& w : words) w = rng.below(4) == 0 ? "n" + std::to_string(rng.below(2000)) : "the";
  const auto tokens = cliff::make_tokens(words);
  for (auto _ : state) benchmark::DoNotOptimize(cliff::match_entities(tokens, gaz));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MatchEntities)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace

BENCHMARK_MAIN();
