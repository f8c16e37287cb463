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

#include <optional>
#include <string>
#include <vector>

#include "cliff/corpus.hpp"

namespace cliff {

using Vector = std::vector<double>;

// Decoder-side token representations of one summary.
struct RepMatrix {
  std::vector<Vector> rows;
  std::vector<bool> entity_mask;

  std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }

  friend bool operator==(const RepMatrix&, const RepMatrix&) = default;
};

// Positives P and negatives N for one article. When present, `reps` and
// `gold_probs` are aligned with positives followed by negatives.
struct TrainingBatch {
  std::string doc_id;
  std::vector<CandidateSample> positives;
  std::vector<CandidateSample> negatives;
  std::optional<std::vector<RepMatrix>> reps;
  std::optional<std::vector<std::vector<double>>> gold_probs;
  bool no_negatives = false;

  std::size_t sample_count() const { return positives.size() + negatives.size(); }

  friend bool operator==(const TrainingBatch&, const TrainingBatch&) = default;
};

}  // namespace cliff
