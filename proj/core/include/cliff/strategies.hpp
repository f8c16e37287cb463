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
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cliff/batch.hpp"
#include "cliff/corpus.hpp"
#include "cliff/genkit.hpp"
#include "cliff/linguo.hpp"
#include "cliff/rng.hpp"

namespace cliff {

inline constexpr double kDefaultLowConfidenceThreshold = 0.21;

struct StrategyConfig {
  double nucleus_p = 0.7;
  std::size_t samples_per_anchor = 3;
  std::size_t fill_len_max = 3;
  std::size_t max_negatives_per_doc = 0;  // 0 = unbounded
  std::size_t negatives_per_batch = 5;    // 5 for XSum-style data, 4 for CNN/DM-style
  double threshold = kDefaultLowConfidenceThreshold;
  std::size_t regen_extra_len = 10;

  // Throws Error on counts < 1 or probabilities outside (0, 1].
  void validate() const;
};

// Surfaces (normalized) that do not count as new: every annotated entity of
// source and reference plus every gazetteer match inside them.
std::set<std::string> known_entity_surfaces(const Document& doc, const Gazetteer& gaz);

// Gazetteer mentions of `tokens` whose surface is not in `known`.
std::vector<EntityMention> new_entities(const std::vector<Token>& tokens, const Gazetteer& gaz,
                                        const std::set<std::string>& known);

// One sample per reference entity that has a differently-surfaced source
// entity of the same type; the replacement is drawn uniformly among the
// distinct such surfaces.
std::vector<CandidateSample> swap_ent(const Document& doc, RngState& rng);

// Masks each reference entity and infills it samples_per_anchor times; keeps
// fills that bring in a gazetteer entity unknown to source and reference.
std::vector<CandidateSample> mask_ent(const Document& doc, const Generator& gen, const Gazetteer& gaz,
                                      const StrategyConfig& cfg, RngState& rng);

// Masks both spans of each reference relation, infills them left to right
// and keeps candidates whose (gov head, rel, dep head) matches nothing in
// source or reference. Heads are the last tokens of the fills.
std::vector<CandidateSample> mask_rel(const Document& doc, const Generator& gen, const SynonymLexicon& syn,
                                      const StrategyConfig& cfg, RngState& rng);

// Prompt = reference before each entity; continuation sampled up to
// |reference| + regen_extra_len tokens. Kept when a new entity appears.
std::vector<CandidateSample> regen_ent(const Document& doc, const Generator& gen, const Gazetteer& gaz,
                                       const StrategyConfig& cfg, RngState& rng);

// Anchors of generated text: the last token of each gazetteer mention, or
// else each content word (POS from the lexicon), left to right.
std::vector<std::size_t> continuation_anchors(const std::vector<Token>& tokens, std::size_t from,
                                              const Gazetteer& gaz, const PosLexicon& pos);

// Prompt = reference before the earlier of the two relation spans. The
// first two anchors of the continuation are realigned to (gov, dep) in the
// original order and kept when that relation matches nothing known.
std::vector<CandidateSample> regen_rel(const Document& doc, const Generator& gen, const SynonymLexicon& syn,
                                       const Gazetteer& gaz, const PosLexicon& pos, const StrategyConfig& cfg,
                                       RngState& rng);

// Keeps a beam when the first token of any proper-noun or number span has
// probability below `threshold`. Untagged tokens are tagged with `pos`.
std::vector<CandidateSample> sys_lowcon(const BeamSet& beams, double threshold, const PosLexicon& pos);

// The reference, plus the paraphrase when it adds no entity unknown to the
// reference and keeps every quoted span verbatim.
std::vector<CandidateSample> build_positive(const Document& doc, const Paraphraser& paraphraser,
                                            const Gazetteer& gaz);

// Samples min(negatives_per_batch, |negatives|) negatives without
// replacement; a single positive is duplicated. Throws Error when
// `positives` is empty.
TrainingBatch assemble_batch(const std::string& doc_id, std::vector<CandidateSample> positives,
                             const std::vector<CandidateSample>& negatives, const StrategyConfig& cfg,
                             RngState& rng);

CandidateSample reference_sample(const Document& doc);

// Everything a per-document construction run needs. Pointers are borrowed.
struct ConstructionContext {
  const Generator* generator = nullptr;
  const Gazetteer* gazetteer = nullptr;
  const SynonymLexicon* synonyms = nullptr;
  const PosLexicon* pos = nullptr;
  StrategyConfig config;
  std::uint64_t seed = 0;
};

// Runs `strategies` in the given order for one document, each from its own
// derived seed. `beams` may be null (sys_lowcon then yields nothing).
// Exact duplicates within a strategy and copies of the reference are
// dropped; max_negatives_per_doc caps the result.
std::vector<CandidateSample> construct_negatives(const Document& doc, std::span<const Strategy> strategies,
                                                 const BeamSet* beams, const ConstructionContext& ctx);

std::vector<Strategy> all_negative_strategies();

// Per-strategy sample counts, keyed in enum order.
std::map<Strategy, std::size_t> count_by_strategy(const std::vector<CandidateSample>& samples);

}  // namespace cliff
