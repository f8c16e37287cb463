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

#include "cliff/strategies.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "cliff/error.hpp"
#include "cliff/text.hpp"

namespace cliff {

void StrategyConfig::validate() const {
  auto prob_ok = [](double p) { return p > 0.0 && p <= 1.0; };
  if (!prob_ok(nucleus_p)) throw Error("nucleus_p must be in (0, 1]");
  if (!prob_ok(threshold)) throw Error("threshold must be in (0, 1]");
  if (samples_per_anchor < 1) throw Error("samples_per_anchor must be >= 1");
  if (fill_len_max < 1) throw Error("fill_len_max must be >= 1");
  if (negatives_per_batch < 1) throw Error("negatives_per_batch must be >= 1");
}

namespace {

std::vector<std::string> surfaces_of(const std::vector<Token>& tokens, std::size_t from = 0,
                                     std::size_t to = std::string::npos) {
  std::vector<std::string> out;
  to = std::min(to, tokens.size());
  for (std::size_t i = from; i < to; ++i) out.push_back(tokens[i].surface);
  return out;
}

void append(std::vector<Token>& dst, const std::vector<Token>& src, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to && i < src.size(); ++i) dst.push_back(src[i]);
}

void append(std::vector<Token>& dst, const std::vector<GenerationStep>& steps) {
  for (const auto& s : steps) dst.push_back(Token{s.token, "", 0});
}

CandidateSample negative(const Document& doc, Strategy strategy, std::vector<Token> tokens,
                         std::vector<Span> edited) {
  reindex(tokens);
  CandidateSample s;
  s.doc_id = doc.id;
  s.tokens = std::move(tokens);
  s.label = Label::kNegative;
  s.strategy = strategy;
  s.edited_spans = std::move(edited);
  return s;
}

}  // namespace

std::set<std::string> known_entity_surfaces(const Document& doc, const Gazetteer& gaz) {
  std::set<std::string> known;
  for (const auto* text : {&doc.source, &doc.reference}) {
    for (const auto& e : text->entities) known.insert(e.surface);
    for (const auto& m : match_entities(text->tokens, gaz)) known.insert(m.surface);
  }
  return known;
}

std::vector<EntityMention> new_entities(const std::vector<Token>& tokens, const Gazetteer& gaz,
                                        const std::set<std::string>& known) {
  std::vector<EntityMention> out;
  for (auto& m : match_entities(tokens, gaz)) {
    if (!known.count(m.surface)) out.push_back(std::move(m));
  }
  return out;
}

CandidateSample reference_sample(const Document& doc) {
  CandidateSample s;
  s.doc_id = doc.id;
  s.tokens = doc.reference.tokens;
  s.label = Label::kPositive;
  s.strategy = Strategy::kReference;
  return s;
}

std::vector<CandidateSample> swap_ent(const Document& doc, RngState& rng) {
  std::vector<CandidateSample> out;
  const auto& ref = doc.reference.tokens;
  for (const auto& e : doc.reference.entities) {
    // distinct replacement surfaces in source order; first mention wins
    std::vector<const EntityMention*> pool;
    std::set<std::string> seen;
    for (const auto& s : doc.source.entities) {
      if (s.etype != e.etype || s.surface == e.surface) continue;
      if (seen.insert(s.surface).second) pool.push_back(&s);
    }
    if (pool.empty()) continue;
    const EntityMention& pick = *pool[rng.below(pool.size())];

    std::vector<Token> tokens;
    append(tokens, ref, 0, e.span.start);
    append(tokens, doc.source.tokens, pick.span.start, pick.span.end);
    append(tokens, ref, e.span.end, ref.size());
    out.push_back(negative(doc, Strategy::kSwapEnt, std::move(tokens),
                           {Span{e.span.start, e.span.start + pick.span.size()}}));
  }
  return out;
}

std::vector<CandidateSample> mask_ent(const Document& doc, const Generator& gen, const Gazetteer& gaz,
                                      const StrategyConfig& cfg, RngState& rng) {
  std::vector<CandidateSample> out;
  const auto& ref = doc.reference.tokens;
  const auto known = known_entity_surfaces(doc, gaz);
  for (const auto& e : doc.reference.entities) {
    const auto left = surfaces_of(ref, 0, e.span.start);
    const auto right = surfaces_of(ref, e.span.end);
    for (std::size_t k = 0; k < cfg.samples_per_anchor; ++k) {
      const auto fill = gen.fill(left, right, rng);
      std::vector<Token> tokens;
      append(tokens, ref, 0, e.span.start);
      append(tokens, fill);
      append(tokens, ref, e.span.end, ref.size());
      if (new_entities(tokens, gaz, known).empty()) continue;
      out.push_back(negative(doc, Strategy::kMaskEnt, std::move(tokens),
                             {Span{e.span.start, e.span.start + fill.size()}}));
    }
  }
  return out;
}

std::vector<CandidateSample> mask_rel(const Document& doc, const Generator& gen, const SynonymLexicon& syn,
                                      const StrategyConfig& cfg, RngState& rng) {
  std::vector<CandidateSample> out;
  const auto& ref = doc.reference.tokens;
  const std::array<const AnnotatedText*, 2> against{&doc.source, &doc.reference};
  for (const auto& triple : extract_relations(doc.reference)) {
    const bool gov_first = triple.gov_span.start < triple.dep_span.start;
    const Span first = gov_first ? triple.gov_span : triple.dep_span;
    const Span second = gov_first ? triple.dep_span : triple.gov_span;
    for (std::size_t k = 0; k < cfg.samples_per_anchor; ++k) {
      std::vector<Token> tokens;
      append(tokens, ref, 0, first.start);
      const auto fill1 = gen.fill(surfaces_of(tokens), surfaces_of(ref, first.end), rng);
      append(tokens, fill1);
      append(tokens, ref, first.end, second.start);
      const std::size_t second_start = tokens.size();
      const auto fill2 = gen.fill(surfaces_of(tokens), surfaces_of(ref, second.end), rng);
      append(tokens, fill2);
      append(tokens, ref, second.end, ref.size());

      const Span span1{first.start, first.start + fill1.size()};
      const Span span2{second_start, second_start + fill2.size()};
      const Span gov_fill = gov_first ? span1 : span2;
      const Span dep_fill = gov_first ? span2 : span1;
      RelationForm form{normalize(tokens[gov_fill.end - 1].surface), triple.rel,
                        normalize(tokens[dep_fill.end - 1].surface)};
      if (relation_matches(form, against, syn)) continue;
      auto s = negative(doc, Strategy::kMaskRel, std::move(tokens), {span1, span2});
      s.relation = std::move(form);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<CandidateSample> regen_ent(const Document& doc, const Generator& gen, const Gazetteer& gaz,
                                       const StrategyConfig& cfg, RngState& rng) {
  std::vector<CandidateSample> out;
  const auto& ref = doc.reference.tokens;
  const auto known = known_entity_surfaces(doc, gaz);
  const std::size_t max_len = ref.size() + cfg.regen_extra_len;
  for (const auto& e : doc.reference.entities) {
    const auto prompt = surfaces_of(ref, 0, e.span.start);
    for (std::size_t k = 0; k < cfg.samples_per_anchor; ++k) {
      const auto cont = gen.continue_from(prompt, max_len, rng);
      std::vector<Token> tokens;
      append(tokens, ref, 0, e.span.start);
      append(tokens, cont);
      if (new_entities(tokens, gaz, known).empty()) continue;
      const std::size_t n = tokens.size();
      std::vector<Span> edited;
      if (n > e.span.start) edited.push_back(Span{e.span.start, n});
      out.push_back(negative(doc, Strategy::kRegenEnt, std::move(tokens), std::move(edited)));
    }
  }
  return out;
}

std::vector<std::size_t> continuation_anchors(const std::vector<Token>& tokens, std::size_t from,
                                              const Gazetteer& gaz, const PosLexicon& pos) {
  std::vector<Token> tail(tokens.begin() + static_cast<std::ptrdiff_t>(std::min(from, tokens.size())),
                          tokens.end());
  const auto mentions = match_entities(tail, gaz);
  std::vector<std::size_t> out;
  std::size_t m = 0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (m < mentions.size() && mentions[m].span.start == i) {
      i = mentions[m].span.end - 1;
      out.push_back(from + i);
      ++m;
      continue;
    }
    const auto& upos = tail[i].upos.empty() ? pos.tag(tail[i].surface) : tail[i].upos;
    if (is_content_upos(upos)) out.push_back(from + i);
  }
  return out;
}

std::vector<CandidateSample> regen_rel(const Document& doc, const Generator& gen, const SynonymLexicon& syn,
                                       const Gazetteer& gaz, const PosLexicon& pos, const StrategyConfig& cfg,
                                       RngState& rng) {
  std::vector<CandidateSample> out;
  const auto& ref = doc.reference.tokens;
  const std::array<const AnnotatedText*, 2> against{&doc.source, &doc.reference};
  const std::size_t max_len = ref.size() + cfg.regen_extra_len;
  for (const auto& triple : extract_relations(doc.reference)) {
    const std::size_t cut = std::min(triple.gov_span.start, triple.dep_span.start);
    const bool gov_first = triple.gov_span.start < triple.dep_span.start;
    const auto prompt = surfaces_of(ref, 0, cut);
    for (std::size_t k = 0; k < cfg.samples_per_anchor; ++k) {
      const auto cont = gen.continue_from(prompt, max_len, rng);
      std::vector<Token> tokens;
      append(tokens, ref, 0, cut);
      append(tokens, cont);
      const auto anchors = continuation_anchors(tokens, cut, gaz, pos);
      if (anchors.size() < 2) continue;
      const auto& a = tokens[anchors[0]].surface;
      const auto& b = tokens[anchors[1]].surface;
      RelationForm form{normalize(gov_first ? a : b), triple.rel, normalize(gov_first ? b : a)};
      if (relation_matches(form, against, syn)) continue;
      const std::size_t n = tokens.size();
      auto s = negative(doc, Strategy::kRegenRel, std::move(tokens), {Span{cut, n}});
      s.relation = std::move(form);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<CandidateSample> sys_lowcon(const BeamSet& beams, double threshold, const PosLexicon& pos) {
  std::vector<CandidateSample> out;
  for (const auto& beam : beams.beams) {
    auto tokens = tag_missing_pos(beam.tokens, pos);
    std::vector<Span> low;
    for (const auto& cs : detect_confidence_spans(tokens)) {
      if (beam.probs[cs.span.start] < threshold) low.push_back(cs.span);
    }
    if (low.empty()) continue;
    CandidateSample s;
    s.doc_id = beams.doc_id;
    s.tokens = std::move(tokens);
    reindex(s.tokens);
    s.label = Label::kNegative;
    s.strategy = Strategy::kSysLowCon;
    s.edited_spans = std::move(low);
    s.gen_probs = beam.probs;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

bool contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty()) return true;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

std::vector<CandidateSample> build_positive(const Document& doc, const Paraphraser& paraphraser,
                                            const Gazetteer& gaz) {
  std::vector<CandidateSample> out{reference_sample(doc)};
  const auto ref_surfaces = doc.reference.surfaces();
  const auto para = paraphraser.paraphrase(ref_surfaces);
  if (para.empty()) return out;

  std::set<std::string> known;
  for (const auto& e : doc.reference.entities) known.insert(e.surface);
  for (const auto& m : match_entities(doc.reference.tokens, gaz)) known.insert(m.surface);

  std::vector<Token> tokens;
  for (std::size_t i = 0; i < para.size(); ++i) {
    std::string upos;
    if (para.size() == ref_surfaces.size()) upos = doc.reference.tokens[i].upos;
    tokens.push_back(Token{para[i], upos, i});
  }
  if (!new_entities(tokens, gaz, known).empty()) return out;
  // each quote must survive together with the marks around it
  for (const auto& q : doc.reference.quotes) {
    const Span marked{q.start > 0 ? q.start - 1 : q.start, std::min(q.end + 1, ref_surfaces.size())};
    if (!contains_run(para, doc.reference.surfaces(marked))) return out;
  }

  CandidateSample s;
  s.doc_id = doc.id;
  s.tokens = std::move(tokens);
  s.label = Label::kPositive;
  s.strategy = Strategy::kBacktranslate;
  for (std::size_t i = 0; i < para.size() && para.size() == ref_surfaces.size(); ++i) {
    if (para[i] != ref_surfaces[i]) s.edited_spans.push_back(Span{i, i + 1});
  }
  out.push_back(std::move(s));
  return out;
}

TrainingBatch assemble_batch(const std::string& doc_id, std::vector<CandidateSample> positives,
                             const std::vector<CandidateSample>& negatives, const StrategyConfig& cfg,
                             RngState& rng) {
  if (positives.empty()) throw Error("doc '" + doc_id + "': batch needs at least one positive");
  TrainingBatch b;
  b.doc_id = doc_id;
  if (positives.size() == 1) positives.push_back(positives.front());
  b.positives = std::move(positives);

  std::vector<std::size_t> idx(negatives.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t take = std::min(cfg.negatives_per_batch, idx.size());
  // partial Fisher-Yates
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  }
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  for (auto i : idx) b.negatives.push_back(negatives[i]);
  b.no_negatives = b.negatives.empty();
  return b;
}

std::vector<Strategy> all_negative_strategies() {
  return {Strategy::kSwapEnt,  Strategy::kMaskEnt,  Strategy::kMaskRel,
          Strategy::kRegenEnt, Strategy::kRegenRel, Strategy::kSysLowCon};
}

std::vector<CandidateSample> construct_negatives(const Document& doc, std::span<const Strategy> strategies,
                                                 const BeamSet* beams, const ConstructionContext& ctx) {
  const auto& cfg = ctx.config;
  const auto ref = doc.reference.surfaces();
  std::vector<CandidateSample> out;
  for (const Strategy s : strategies) {
    RngState rng(derive_seed(ctx.seed, doc.id, to_string(s)));
    std::vector<CandidateSample> got;
    switch (s) {
      case Strategy::kSwapEnt: got = swap_ent(doc, rng); break;
      case Strategy::kMaskEnt: got = mask_ent(doc, *ctx.generator, *ctx.gazetteer, cfg, rng); break;
      case Strategy::kMaskRel: got = mask_rel(doc, *ctx.generator, *ctx.synonyms, cfg, rng); break;
      case Strategy::kRegenEnt: got = regen_ent(doc, *ctx.generator, *ctx.gazetteer, cfg, rng); break;
      case Strategy::kRegenRel:
        got = regen_rel(doc, *ctx.generator, *ctx.synonyms, *ctx.gazetteer, *ctx.pos, cfg, rng);
        break;
      case Strategy::kSysLowCon:
        if (beams) got = sys_lowcon(*beams, cfg.threshold, *ctx.pos);
        break;
      case Strategy::kReference:
      case Strategy::kBacktranslate:
        throw Error("'" + std::string(to_string(s)) + "' is not a negative strategy");
    }
    std::set<std::vector<std::string>> seen{ref};
    for (auto& c : got) {
      if (seen.insert(c.surfaces()).second) out.push_back(std::move(c));
    }
  }
  if (cfg.max_negatives_per_doc > 0 && out.size() > cfg.max_negatives_per_doc) {
    out.resize(cfg.max_negatives_per_doc);
  }
  return out;
}

std::map<Strategy, std::size_t> count_by_strategy(const std::vector<CandidateSample>& samples) {
  std::map<Strategy, std::size_t> out;
  for (const auto& s : samples) ++out[s.strategy];
  return out;
}

}  // namespace cliff
