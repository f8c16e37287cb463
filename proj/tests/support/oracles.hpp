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

// Reference implementations used only by tests. Each one is written
// independently of the library code path it checks: naive formulas, full
// enumeration, or plain dynamic programming.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cliff/corpus.hpp"

namespace cliff::oracle {

using Vec = std::vector<double>;

double cosine(const Vec& a, const Vec& b);

// Contrastive objective by direct term enumeration with plain exp/log and
// the 1/C(|P|,2) coefficient.
double contrastive_enumerate(const std::vector<Vec>& pos, const std::vector<Vec>& neg, double tau);

// Every (start, end) whose lowercased joined surface is a gazetteer key.
std::vector<std::pair<std::size_t, std::size_t>> all_gazetteer_hits(const std::vector<std::string>& surfaces,
                                                                    const std::set<std::string>& keys);

// Among all non-overlapping subsets of hits, the one that is greatest when
// its members are listed left to right and compared by (earlier start,
// then longer) at the first difference. Exponential; small inputs only.
std::vector<std::pair<std::size_t, std::size_t>> best_nonoverlapping(
    const std::vector<std::pair<std::size_t, std::size_t>>& hits);

// Full-table longest common subsequence, case-insensitive.
std::size_t lcs_table(const std::vector<std::string>& a, const std::vector<std::string>& b);

double pearson_two_pass(const std::vector<double>& xs, const std::vector<double>& ys);

// First-token confidence: class of a token is "number" for NUM or numerals,
// "propn" for PROPN, none otherwise; returns indices of tokens that start a
// run of their class.
std::vector<std::size_t> first_tokens(const std::vector<Token>& tokens);
bool lowcon_keep(const std::vector<Token>& tokens, const std::vector<double>& probs, double threshold);

struct ScanResult {
  double threshold = 0.0;
  double f1 = 0.0;
};

// Scores each output, then tries every candidate threshold and keeps the
// best F1 (smallest threshold on ties).
ScanResult threshold_scan(const std::vector<AnnotatedOutput>& outputs, bool world_knowledge_is_error);

// Same rule as relation matching, restated: some edge in some text with the
// same label whose endpoint surfaces are equal (lowercase) or share a group.
bool relation_found(const std::string& gov, const std::string& rel, const std::string& dep,
                    const std::vector<const AnnotatedText*>& texts,
                    const std::vector<std::vector<std::string>>& synonym_groups);

// Lowercased surface set of entity mentions and gazetteer hits in a text.
std::set<std::string> mentioned_surfaces(const AnnotatedText& text, const std::set<std::string>& keys);

}  // namespace cliff::oracle
