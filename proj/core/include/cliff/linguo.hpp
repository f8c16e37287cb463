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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cliff/corpus.hpp"

namespace cliff {

// ---------------------------------------------------------------------------
// Relation triples

// <gov, rel, dep> with endpoints optionally widened to an enclosing NP chunk.
// The heads are the original edge tokens, never recomputed from the spans.
struct RelationTriple {
  Span gov_span;
  std::string rel;
  Span dep_span;
  std::size_t gov_head = 0;
  std::size_t dep_head = 0;

  friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
};

// NOUN, PROPN, VERB, ADJ, ADV, NUM.
bool is_content_upos(std::string_view upos);

// One triple per edge with at least one content-word endpoint, ordered by
// (gov_head, dep_head). A content-word endpoint is widened to its NP chunk
// when that chunk overlaps a named entity; if the widened spans would
// overlap each other both endpoints fall back to single tokens.
std::vector<RelationTriple> extract_relations(const AnnotatedText& text);

// Groups of interchangeable word forms, normalized. Groups are disjoint.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;
  // Throws Error when a form appears in two groups.
  explicit SynonymLexicon(std::vector<std::vector<std::string>> groups);

  // One group per line, forms separated by tabs. Blank lines and lines
  // starting with '#' are ignored.
  static SynonymLexicon from_tsv(std::istream& in);
  static SynonymLexicon from_tsv(const std::filesystem::path& path);

  bool empty() const { return groups_.empty(); }
  const std::vector<std::vector<std::string>>& groups() const { return groups_; }
  // Group index of a form, or -1.
  long group_of(std::string_view form) const;
  // Same normalized form or same group.
  bool equivalent(std::string_view a, std::string_view b) const;

 private:
  std::vector<std::vector<std::string>> groups_;
  std::unordered_map<std::string, long> index_;
};

RelationForm relation_form(const RelationTriple& t, const std::vector<Token>& tokens);

// True iff some edge of some text in `against` carries the same relation
// label and its gov/dep surfaces are equivalent to the form's gov/dep.
bool relation_matches(const RelationForm& form, std::span<const AnnotatedText* const> against,
                      const SynonymLexicon& syn);
bool relation_matches(const RelationTriple& triple, const std::vector<Token>& tokens,
                      std::span<const AnnotatedText* const> against, const SynonymLexicon& syn);

// ---------------------------------------------------------------------------
// Gazetteer

class Gazetteer {
 public:
  // Records one observation; the stored type is the most frequent one per
  // surface (ties: lexicographically smallest).
  void add(const std::string& surface, const std::string& etype, const std::string& doc_id);

  bool contains(const std::string& surface) const { return entries_.count(surface) > 0; }
  std::size_t size() const { return entries_.size(); }
  // Empty string when absent.
  std::string type_of(const std::string& surface) const;
  const std::set<std::string>& sources_of(const std::string& surface) const;
  std::size_t max_length() const { return max_len_; }
  std::map<std::string, std::string> entries() const;

  // "surface\ttype" per line, sorted by surface.
  void write_tsv(std::ostream& out) const;

 private:
  struct Entry {
    std::map<std::string, std::size_t> type_counts;
    std::set<std::string> sources;
  };
  std::map<std::string, Entry> entries_;
  std::size_t max_len_ = 0;
};

// Union of every entity mention in every source and reference.
Gazetteer build_gazetteer(const Corpus& corpus);

// Leftmost-longest, non-overlapping, scanning left to right.
std::vector<EntityMention> match_entities(const std::vector<Token>& tokens, const Gazetteer& gaz);

// ---------------------------------------------------------------------------
// POS

enum class ConfClass { kPropn, kNumber };

struct ConfidenceSpan {
  Span span;
  ConfClass cls = ConfClass::kPropn;

  friend bool operator==(const ConfidenceSpan&, const ConfidenceSpan&) = default;
};

// A token is a number when tagged NUM or shaped like one, else a proper noun
// when tagged PROPN. Maximal same-class runs, in order.
std::vector<ConfidenceSpan> detect_confidence_spans(const std::vector<Token>& tokens);

class PosLexicon {
 public:
  void observe(std::string_view surface, const std::string& upos);
  // Majority tag (ties: smallest tag); unknown numerals are NUM, other
  // unknown surfaces X.
  std::string tag(std::string_view surface) const;
  std::size_t size() const { return counts_.size(); }

 private:
  std::unordered_map<std::string, std::map<std::string, std::size_t>> counts_;
};

PosLexicon build_pos_lexicon(const Corpus& corpus);

// Fills every token's UPOS from the lexicon.
std::vector<Token> tag_pos(std::vector<Token> tokens, const PosLexicon& lex);
// Only tags tokens whose UPOS is empty.
std::vector<Token> tag_missing_pos(std::vector<Token> tokens, const PosLexicon& lex);

}  // namespace cliff
