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

#include "cliff/linguo.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "cliff/error.hpp"
#include "cliff/text.hpp"

namespace cliff {

bool is_content_upos(std::string_view upos) {
  return upos == "NOUN" || upos == "PROPN" || upos == "VERB" || upos == "ADJ" || upos == "ADV" ||
         upos == "NUM";
}

namespace {

Span widen(const AnnotatedText& text, std::size_t head) {
  if (!is_content_upos(text.tokens[head].upos)) return Span{head, head + 1};
  for (const auto& chunk : text.np_chunks) {
    if (!chunk.contains(head)) continue;
    const bool has_entity = std::any_of(text.entities.begin(), text.entities.end(),
                                        [&](const EntityMention& e) { return e.span.overlaps(chunk); });
    if (has_entity) return chunk;
  }
  return Span{head, head + 1};
}

}  // namespace

std::vector<RelationTriple> extract_relations(const AnnotatedText& text) {
  std::vector<RelationTriple> out;
  const std::size_t n = text.tokens.size();
  for (const auto& edge : text.deps) {
    if (edge.gov >= n || edge.dep >= n || edge.gov == edge.dep) continue;
    if (!is_content_upos(text.tokens[edge.gov].upos) && !is_content_upos(text.tokens[edge.dep].upos)) continue;
    Span g = widen(text, edge.gov);
    Span d = widen(text, edge.dep);
    if (g.overlaps(d)) {
      g = Span{edge.gov, edge.gov + 1};
      d = Span{edge.dep, edge.dep + 1};
    }
    out.push_back(RelationTriple{g, edge.rel, d, edge.gov, edge.dep});
  }
  std::stable_sort(out.begin(), out.end(), [](const RelationTriple& a, const RelationTriple& b) {
    return std::pair(a.gov_head, a.dep_head) < std::pair(b.gov_head, b.dep_head);
  });
  return out;
}

SynonymLexicon::SynonymLexicon(std::vector<std::vector<std::string>> groups) {
  for (auto& g : groups) {
    std::vector<std::string> norm;
    for (const auto& w : g) {
      auto n = normalize(trim(w));
      if (n.empty() || std::find(norm.begin(), norm.end(), n) != norm.end()) continue;
      norm.push_back(std::move(n));
    }
    if (norm.size() < 2) continue;
    const long id = static_cast<long>(groups_.size());
    for (const auto& w : norm) {
      if (!index_.emplace(w, id).second) throw Error("synonym '" + w + "' appears in more than one group");
    }
    groups_.push_back(std::move(norm));
  }
}

SynonymLexicon SynonymLexicon::from_tsv(std::istream& in) {
  std::vector<std::vector<std::string>> groups;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    groups.push_back(split(t, '\t'));
  }
  return SynonymLexicon(std::move(groups));
}

SynonymLexicon SynonymLexicon::from_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open synonym file '" + path.string() + "'");
  return from_tsv(in);
}

long SynonymLexicon::group_of(std::string_view form) const {
  auto it = index_.find(normalize(form));
  return it == index_.end() ? -1 : it->second;
}

bool SynonymLexicon::equivalent(std::string_view a, std::string_view b) const {
  const auto na = normalize(a);
  const auto nb = normalize(b);
  if (na == nb) return true;
  const long ga = group_of(na);
  return ga >= 0 && ga == group_of(nb);
}

RelationForm relation_form(const RelationTriple& t, const std::vector<Token>& tokens) {
  return RelationForm{normalize(tokens.at(t.gov_head).surface), t.rel, normalize(tokens.at(t.dep_head).surface)};
}

bool relation_matches(const RelationForm& form, std::span<const AnnotatedText* const> against,
                      const SynonymLexicon& syn) {
  for (const AnnotatedText* text : against) {
    for (const auto& e : text->deps) {
      if (e.rel != form.rel) continue;
      if (syn.equivalent(text->tokens[e.gov].surface, form.gov) &&
          syn.equivalent(text->tokens[e.dep].surface, form.dep)) {
        return true;
      }
    }
  }
  return false;
}

bool relation_matches(const RelationTriple& triple, const std::vector<Token>& tokens,
                      std::span<const AnnotatedText* const> against, const SynonymLexicon& syn) {
  return relation_matches(relation_form(triple, tokens), against, syn);
}

void Gazetteer::add(const std::string& surface, const std::string& etype, const std::string& doc_id) {
  if (surface.empty()) return;
  auto& e = entries_[surface];
  ++e.type_counts[etype];
  e.sources.insert(doc_id);
  max_len_ = std::max(max_len_, split(surface, ' ').size());
}

std::string Gazetteer::type_of(const std::string& surface) const {
  auto it = entries_.find(surface);
  if (it == entries_.end()) return {};
  // std::map iterates types in ascending order, so the first maximum wins ties.
  const auto& counts = it->second.type_counts;
  auto best = counts.begin();
  for (auto c = counts.begin(); c != counts.end(); ++c) {
    if (c->second > best->second) best = c;
  }
  return best->first;
}

const std::set<std::string>& Gazetteer::sources_of(const std::string& surface) const {
  static const std::set<std::string> kEmpty;
  auto it = entries_.find(surface);
  return it == entries_.end() ? kEmpty : it->second.sources;
}

std::map<std::string, std::string> Gazetteer::entries() const {
  std::map<std::string, std::string> out;
  for (const auto& [surface, _] : entries_) out.emplace(surface, type_of(surface));
  return out;
}

void Gazetteer::write_tsv(std::ostream& out) const {
  for (const auto& [surface, etype] : entries()) out << surface << '\t' << etype << '\n';
}

Gazetteer build_gazetteer(const Corpus& corpus) {
  Gazetteer gaz;
  for (const auto& doc : corpus) {
    for (const auto* text : {&doc.source, &doc.reference}) {
      for (const auto& e : text->entities) gaz.add(e.surface, e.etype, doc.id);
    }
  }
  return gaz;
}

std::vector<EntityMention> match_entities(const std::vector<Token>& tokens, const Gazetteer& gaz) {
  std::vector<EntityMention> out;
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const auto& t : tokens) lower.push_back(to_lower(t.surface));

  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    const std::size_t longest = std::min(gaz.max_length(), tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::string key = lower[i];
      for (std::size_t k = 1; k < len; ++k) key += ' ' + lower[i + k];
      if (gaz.contains(key)) {
        out.push_back(EntityMention{Span{i, i + len}, gaz.type_of(key), key});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

namespace {

enum class TokClass { kNone, kPropn, kNumber };

TokClass classify(const Token& t) {
  if (t.upos == "NUM" || looks_numeric(t.surface)) return TokClass::kNumber;
  if (t.upos == "PROPN") return TokClass::kPropn;
  return TokClass::kNone;
}

}  // namespace

std::vector<ConfidenceSpan> detect_confidence_spans(const std::vector<Token>& tokens) {
  std::vector<ConfidenceSpan> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const TokClass c = classify(tokens[i]);
    if (c == TokClass::kNone) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && classify(tokens[j]) == c) ++j;
    out.push_back(ConfidenceSpan{Span{i, j}, c == TokClass::kPropn ? ConfClass::kPropn : ConfClass::kNumber});
    i = j;
  }
  return out;
}

void PosLexicon::observe(std::string_view surface, const std::string& upos) {
  if (upos.empty()) return;
  ++counts_[to_lower(surface)][upos];
}

std::string PosLexicon::tag(std::string_view surface) const {
  auto it = counts_.find(to_lower(surface));
  if (it == counts_.end()) return looks_numeric(surface) ? "NUM" : "X";
  auto best = it->second.begin();
  for (auto c = it->second.begin(); c != it->second.end(); ++c) {
    if (c->second > best->second) best = c;
  }
  return best->first;
}

PosLexicon build_pos_lexicon(const Corpus& corpus) {
  PosLexicon lex;
  for (const auto& doc : corpus) {
    for (const auto* text : {&doc.source, &doc.reference}) {
      for (const auto& t : text->tokens) lex.observe(t.surface, t.upos);
    }
  }
  return lex;
}

std::vector<Token> tag_pos(std::vector<Token> tokens, const PosLexicon& lex) {
  for (auto& t : tokens) t.upos = lex.tag(t.surface);
  return tokens;
}

std::vector<Token> tag_missing_pos(std::vector<Token> tokens, const PosLexicon& lex) {
  for (auto& t : tokens) {
    if (t.upos.empty()) t.upos = lex.tag(t.surface);
  }
  return tokens;
}

}  // namespace cliff
