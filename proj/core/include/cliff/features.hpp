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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cliff/batch.hpp"
#include "cliff/genkit.hpp"
#include "cliff/linguo.hpp"

namespace cliff {

// Deterministic stand-in for decoder states: each token row is a hashed
// embedding of its lowercased surface (uniform in [-1, 1]^dim, keyed by
// `seed`), and the entity mask marks gazetteer matches.
RepMatrix hashed_reps(const std::vector<Token>& tokens, std::size_t dim, const Gazetteer& gaz,
                      std::uint64_t seed);

// Fills batch.reps and batch.gold_probs (n-gram teacher-forced token
// probabilities) for positives then negatives.
void attach_features(TrainingBatch& batch, const NGramModel& model, const Gazetteer& gaz, std::size_t dim,
                     std::uint64_t seed);

}  // namespace cliff
