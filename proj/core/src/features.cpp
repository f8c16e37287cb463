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

#include "cliff/features.hpp"

#include "cliff/rng.hpp"
#include "cliff/text.hpp"

namespace cliff {

RepMatrix hashed_reps(const std::vector<Token>& tokens, std::size_t dim, const Gazetteer& gaz,
                      std::uint64_t seed) {
  RepMatrix m;
  m.entity_mask.assign(tokens.size(), false);
  for (const auto& mention : match_entities(tokens, gaz)) {
    for (std::size_t i = mention.span.start; i < mention.span.end; ++i) m.entity_mask[i] = true;
  }
  for (const auto& t : tokens) {
    RngState rng(fnv1a64(to_lower(t.surface), splitmix64(seed)));
    Vector row(dim);
    for (auto& x : row) x = 2.0 * rng.uniform() - 1.0;
    m.rows.push_back(std::move(row));
  }
  return m;
}

void attach_features(TrainingBatch& batch, const NGramModel& model, const Gazetteer& gaz, std::size_t dim,
                     std::uint64_t seed) {
  std::vector<RepMatrix> reps;
  std::vector<std::vector<double>> probs;
  for (const auto* group : {&batch.positives, &batch.negatives}) {
    for (const auto& s : *group) {
      reps.push_back(hashed_reps(s.tokens, dim, gaz, seed));
      probs.push_back(model.sequence_probs(s.surfaces()));
    }
  }
  batch.reps = std::move(reps);
  batch.gold_probs = std::move(probs);
}

}  // namespace cliff
