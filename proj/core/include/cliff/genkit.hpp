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
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cliff/corpus.hpp"
#include "cliff/linguo.hpp"
#include "cliff/rng.hpp"

namespace cliff {

inline constexpr const char* kBos = "<s>";
inline constexpr const char* kEos = "</s>";

// Token -> probability. Ordered by token so iteration is deterministic.
using Distribution = std::map<std::string, double>;

struct GenerationStep {
  std::string token;
  double prob = 0.0;      // under the truncated, renormalized distribution
  double raw_prob = 0.0;  // under the full model distribution

  friend bool operator==(const GenerationStep&, const GenerationStep&) = default;
};

std::vector<std::string> step_tokens(const std::vector<GenerationStep>& steps);

// Add-k smoothed n-gram model over surfaces (case preserved). Every stream
// is padded with order-1 start markers and one end marker. Next-token
// distributions range over the observed tokens plus the end marker; the
// start marker is never predicted.
class NGramModel {
 public:
  // Trains on every source and reference. Throws Error on an empty corpus
  // or order < 2 or k <= 0.
  static NGramModel train(const Corpus& corpus, std::size_t order = 3, double smoothing_k = 0.1);
  static NGramModel train(const std::vector<std::vector<std::string>>& streams, std::size_t order,
                          double smoothing_k);

  std::size_t order() const { return order_; }
  double smoothing_k() const { return k_; }
  // Includes both markers.
  const std::set<std::string>& vocab() const { return vocab_; }
  // The support of every next-token distribution.
  const std::vector<std::string>& outcomes() const { return outcomes_; }

  std::size_t count(std::span<const std::string> context, const std::string& token) const;
  std::size_t context_total(std::span<const std::string> context) const;

  // Only the last order-1 tokens of `history` matter; shorter histories are
  // left-padded with start markers.
  Distribution next_distribution(std::span<const std::string> history) const;
  double prob(std::span<const std::string> history, const std::string& token) const;

  // P(token_t | preceding tokens) for each token of a sequence, starting
  // from a fresh sentence.
  std::vector<double> sequence_probs(std::span<const std::string> tokens) const;

  // "context\ttoken\tcount" rows; context tokens joined by spaces.
  void write_tsv(std::ostream& out) const;

 private:
  std::string context_key(std::span<const std::string> history) const;

  std::size_t order_ = 3;
  double k_ = 0.1;
  std::set<std::string> vocab_;
  std::vector<std::string> outcomes_;
  std::unordered_map<std::string, std::map<std::string, std::size_t>> counts_;
  std::unordered_map<std::string, std::size_t> totals_;
};

// Smallest prefix of the tokens ranked by descending probability (ties by
// token) whose cumulative mass reaches p, renormalized to 1.
Distribution nucleus_filter(const Distribution& dist, double p);

// Entries sorted by descending probability, ties by token.
std::vector<std::pair<std::string, double>> ranked(const Distribution& dist);

// Draws one token from `dist` by inverse CDF over ranked order.
std::string draw(const Distribution& dist, RngState& rng);

// Autoregressive nucleus sampling from `prefix`; stops at the end marker
// (not emitted) or after max_len tokens.
std::vector<GenerationStep> sample_sequence(const NGramModel& model, std::span<const std::string> prefix,
                                            std::size_t max_len, double nucleus_p, RngState& rng);

// Forward-only infilling: draws a length uniformly from {1..max_fill}, then
// samples that many tokens after `left`, never emitting markers. `right` is
// accepted for interface parity but not conditioned on.
std::vector<GenerationStep> fill_mask(const NGramModel& model, std::span<const std::string> left,
                                      std::span<const std::string> right, double nucleus_p,
                                      std::size_t max_fill, RngState& rng);

// Adapter surface for text generators. Tokens in, steps out.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<GenerationStep> fill(std::span<const std::string> left,
                                           std::span<const std::string> right, RngState& rng) const = 0;
  virtual std::vector<GenerationStep> continue_from(std::span<const std::string> prompt, std::size_t max_len,
                                                    RngState& rng) const = 0;
};

class NGramGenerator final : public Generator {
 public:
  NGramGenerator(const NGramModel& model, double nucleus_p = 0.7, std::size_t max_fill = 3)
      : model_(model), p_(nucleus_p), max_fill_(max_fill) {}

  std::vector<GenerationStep> fill(std::span<const std::string> left, std::span<const std::string> right,
                                   RngState& rng) const override;
  std::vector<GenerationStep> continue_from(std::span<const std::string> prompt, std::size_t max_len,
                                            RngState& rng) const override;

 private:
  const NGramModel& model_;
  double p_;
  std::size_t max_fill_;
};

// Stand-in for round-trip translation.
class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual std::vector<std::string> paraphrase(std::span<const std::string> tokens) const = 0;
};

// Replaces up to `max_substitutions` of the leftmost tokens that belong to a
// synonym group (at most one per group) with the first other member of the
// group. Token count never changes.
class SynonymParaphraser final : public Paraphraser {
 public:
  explicit SynonymParaphraser(const SynonymLexicon& lexicon, std::size_t max_substitutions = 2)
      : lexicon_(lexicon), max_subs_(max_substitutions) {}

  std::vector<std::string> paraphrase(std::span<const std::string> tokens) const override;

 private:
  const SynonymLexicon& lexicon_;
  std::size_t max_subs_;
};

}  // namespace cliff
