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

#include "cliff/corpus.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cliff/text.hpp"

namespace cliff {

std::vector<std::string> AnnotatedText::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> AnnotatedText::surfaces(Span s) const {
  std::vector<std::string> out;
  for (std::size_t i = s.start; i < s.end && i < tokens.size(); ++i) out.push_back(tokens[i].surface);
  return out;
}

std::vector<std::string> CandidateSample::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::kIntrinsic: return "intrinsic";
    case ErrorKind::kExtrinsic: return "extrinsic";
    case ErrorKind::kWorldKnowledge: return "world_knowledge";
  }
  return "extrinsic";
}

std::optional<ErrorKind> parse_error_kind(std::string_view s) {
  const auto l = to_lower(s);
  if (l == "intrinsic") return ErrorKind::kIntrinsic;
  if (l == "extrinsic") return ErrorKind::kExtrinsic;
  if (l == "world_knowledge" || l == "world-knowledge") return ErrorKind::kWorldKnowledge;
  return std::nullopt;
}

std::string_view to_string(Label l) {
  return l == Label::kPositive ? "positive" : "negative";
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "positive") return Label::kPositive;
  if (s == "negative") return Label::kNegative;
  return std::nullopt;
}

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 8> kStrategyNames{{
    {Strategy::kReference, "reference"},
    {Strategy::kBacktranslate, "backtranslate"},
    {Strategy::kSwapEnt, "swap_ent"},
    {Strategy::kMaskEnt, "mask_ent"},
    {Strategy::kMaskRel, "mask_rel"},
    {Strategy::kRegenEnt, "regen_ent"},
    {Strategy::kRegenRel, "regen_rel"},
    {Strategy::kSysLowCon, "sys_lowcon"},
}};

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kStrategyNames) {
    if (k == s) return name;
  }
  return "reference";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  std::string key(s);
  std::replace(key.begin(), key.end(), '-', '_');
  key = to_lower(key);
  for (const auto& [k, name] : kStrategyNames) {
    if (name == key) return k;
  }
  return std::nullopt;
}

std::vector<Token> make_tokens(const std::vector<std::string>& surfaces,
                               const std::vector<std::string>& upos) {
  std::vector<Token> out;
  out.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    out.push_back(Token{surfaces[i], i < upos.size() ? upos[i] : std::string{}, i});
  }
  return out;
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

bool is_upos(std::string_view tag) {
  static constexpr std::array<std::string_view, 17> kTags{
      "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
      "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};
  return std::find(kTags.begin(), kTags.end(), tag) != kTags.end();
}

namespace {

std::string span_str(const Span& s) {
  std::ostringstream os;
  os << "[" << s.start << "," << s.end << ")";
  return os.str();
}

template <typename Get>
void check_spans(std::vector<std::string>& out, std::string_view field, std::string_view name,
                 std::size_t count, std::size_t n_tokens, Get get, bool disjoint) {
  for (std::size_t k = 0; k < count; ++k) {
    const Span& s = get(k);
    const std::string where = std::string(field) + "." + std::string(name) + "[" + std::to_string(k) + "]";
    if (!(s.start < s.end && s.end <= n_tokens)) {
      out.push_back(where + ": span " + span_str(s) + " out of range for " +
                    std::to_string(n_tokens) + " tokens");
      continue;
    }
    if (!disjoint) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const Span& o = get(j);
      if (o.start < o.end && s.overlaps(o)) {
        out.push_back(where + ": span " + span_str(s) + " overlaps " + std::string(name) + "[" +
                      std::to_string(j) + "] " + span_str(o));
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_text(const AnnotatedText& text, std::string_view field) {
  std::vector<std::string> out;
  const std::string f(field);
  const std::size_t n = text.tokens.size();
  if (n == 0) out.push_back(f + ".tokens: empty");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = text.tokens[i];
    const std::string where = f + ".tokens[" + std::to_string(i) + "]";
    if (t.surface.empty()) out.push_back(where + ": empty surface");
    if (t.index != i) out.push_back(where + ": index " + std::to_string(t.index) + " != position");
    if (!t.upos.empty() && !is_upos(t.upos)) out.push_back(where + ": unknown UPOS '" + t.upos + "'");
  }

  check_spans(out, f, "entities", text.entities.size(), n,
              [&](std::size_t k) -> const Span& { return text.entities[k].span; }, true);
  for (std::size_t k = 0; k < text.entities.size(); ++k) {
    const auto& e = text.entities[k];
    if (!(e.span.start < e.span.end && e.span.end <= n)) continue;
    const auto expected = normalize(text.surfaces(e.span));
    if (e.surface != expected) {
      out.push_back(f + ".entities[" + std::to_string(k) + "]: surface '" + e.surface +
                    "' != '" + expected + "'");
    }
    if (e.etype.empty()) out.push_back(f + ".entities[" + std::to_string(k) + "]: empty etype");
  }

  for (std::size_t k = 0; k < text.deps.size(); ++k) {
    const auto& d = text.deps[k];
    const std::string where = f + ".deps[" + std::to_string(k) + "]";
    if (d.gov >= n || d.dep >= n) out.push_back(where + ": index out of range");
    else if (d.gov == d.dep) out.push_back(where + ": gov == dep");
    if (d.rel.empty()) out.push_back(where + ": empty rel");
  }

  check_spans(out, f, "np_chunks", text.np_chunks.size(), n,
              [&](std::size_t k) -> const Span& { return text.np_chunks[k]; }, true);
  check_spans(out, f, "quotes", text.quotes.size(), n,
              [&](std::size_t k) -> const Span& { return text.quotes[k]; }, false);
  return out;
}

std::vector<std::string> validate_document(const Document& doc) {
  std::vector<std::string> out;
  if (doc.id.empty()) out.push_back("id: empty");
  auto a = validate_text(doc.source, "source");
  auto b = validate_text(doc.reference, "reference");
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace cliff
