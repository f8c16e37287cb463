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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cliff {

struct Token {
  std::string surface;
  std::string upos;  // empty when untagged (beams, generated text)
  std::size_t index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Half-open token range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(std::size_t i) const { return i >= start && i < end; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct EntityMention {
  Span span;
  std::string etype;
  std::string surface;  // lowercased, single-space joined

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

struct DepEdge {
  std::size_t gov = 0;
  std::string rel;
  std::size_t dep = 0;

  friend bool operator==(const DepEdge&, const DepEdge&) = default;
};

struct AnnotatedText {
  std::vector<Token> tokens;
  std::vector<EntityMention> entities;
  std::vector<DepEdge> deps;
  std::vector<Span> np_chunks;
  std::vector<Span> quotes;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> surfaces() const;
  std::vector<std::string> surfaces(Span s) const;

  friend bool operator==(const AnnotatedText&, const AnnotatedText&) = default;
};

struct Document {
  std::string id;
  AnnotatedText source;
  AnnotatedText reference;

  friend bool operator==(const Document&, const Document&) = default;
};

using Corpus = std::vector<Document>;

enum class ErrorKind { kIntrinsic, kExtrinsic, kWorldKnowledge };

std::string_view to_string(ErrorKind k);
// Case-insensitive; returns nullopt for unknown names.
std::optional<ErrorKind> parse_error_kind(std::string_view s);

struct ErrorSpan {
  Span span;
  ErrorKind kind = ErrorKind::kExtrinsic;

  friend bool operator==(const ErrorSpan&, const ErrorSpan&) = default;
};

struct Beam {
  std::vector<Token> tokens;
  std::vector<double> probs;
  int rank = 0;

  friend bool operator==(const Beam&, const Beam&) = default;
};

struct BeamSet {
  std::string doc_id;
  std::vector<Beam> beams;

  friend bool operator==(const BeamSet&, const BeamSet&) = default;
};

struct AnnotatedOutput {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<double> probs;
  std::vector<ErrorSpan> errors;

  friend bool operator==(const AnnotatedOutput&, const AnnotatedOutput&) = default;
};

enum class Label { kPositive, kNegative };

enum class Strategy {
  kReference,
  kBacktranslate,
  kSwapEnt,
  kMaskEnt,
  kMaskRel,
  kRegenEnt,
  kRegenRel,
  kSysLowCon,
};

std::string_view to_string(Label l);
std::string_view to_string(Strategy s);
std::optional<Label> parse_label(std::string_view s);
// Accepts both snake_case ("swap_ent") and the CLI's kebab-case ("swap-ent").
std::optional<Strategy> parse_strategy(std::string_view s);

// Normalized surface triple of a relation found in generated text; carried
// on relation-based negatives so the decision can be re-checked.
struct RelationForm {
  std::string gov;
  std::string rel;
  std::string dep;

  friend bool operator==(const RelationForm&, const RelationForm&) = default;
};

struct CandidateSample {
  std::string doc_id;
  std::vector<Token> tokens;
  Label label = Label::kNegative;
  Strategy strategy = Strategy::kReference;
  std::vector<Span> edited_spans;
  std::optional<std::vector<double>> gen_probs;
  std::optional<RelationForm> relation;

  std::vector<std::string> surfaces() const;

  friend bool operator==(const CandidateSample&, const CandidateSample&) = default;
};

// Builds tokens with index == position. `upos` may be shorter than
// `surfaces`; missing tags stay empty.
std::vector<Token> make_tokens(const std::vector<std::string>& surfaces,
                               const std::vector<std::string>& upos = {});
void reindex(std::vector<Token>& tokens);

// The 17 universal POS tags.
bool is_upos(std::string_view tag);

// Empty iff every type invariant holds. Entries look like
// "reference.entities[2]: ...".
std::vector<std::string> validate_document(const Document& doc);
std::vector<std::string> validate_text(const AnnotatedText& text, std::string_view field);

}  // namespace cliff
