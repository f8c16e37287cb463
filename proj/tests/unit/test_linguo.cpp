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

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <sstream>

#include "cliff/error.hpp"
#include "cliff/linguo.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace cliff {
namespace {

using testing::owl_document;
using testing::parse_one;
using testing::plain_text;
using testing::row;

const RelationTriple* find_triple(const std::vector<RelationTriple>& ts, std::size_t gov, std::size_t dep) {
  for (const auto& t : ts) {
    if (t.gov_head == gov && t.dep_head == dep) return &t;
  }
  return nullptr;
}

TEST(Relations, EntityChunkExpandsTheEndpoint) {
  const auto ts = extract_relations(owl_document().reference);
  const auto* t = find_triple(ts, 6, 9);  // found -obl-> Flintshire
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->rel, "obl");
  EXPECT_EQ(t->dep_span, (Span{8, 10}));
  EXPECT_EQ(t->gov_span, (Span{6, 7}));
}

TEST(Relations, ChunkWithoutEntityDoesNotExpand) {
  const auto ts = extract_relations(owl_document().reference);
  const auto* t = find_triple(ts, 12, 5);  // recuperating -nsubj-> owl, chunk "A `` rare '' short-eared owl"
  ASSERT_NE(t, nullptr);
  EXPECT_EQ(t->dep_span, (Span{5, 6}));
}

TEST(Relations, FunctionWordEdgesAreSkipped) {
  const auto t = parse_one(row(1, "of", "ADP", 0, "root") + row(2, "the", "DET", 1, "det"));
  EXPECT_TRUE(extract_relations(t).empty());
}

TEST(Relations, NounOutsideChunksStaysSingleToken) {
  const auto t = parse_one(row(1, "dogs", "NOUN", 2, "nsubj") + row(2, "bark", "VERB", 0, "root"));
  const auto ts = extract_relations(t);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].dep_span, (Span{0, 1}));
  EXPECT_EQ(ts[0].gov_span, (Span{1, 2}));
}

TEST(Relations, OrderedByHeadsAndNeverOverlapping) {
  for (const auto& doc : testing::synthetic_corpus()) {
    for (const auto* text : {&doc.source, &doc.reference}) {
      const auto ts = extract_relations(*text);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        EXPECT_FALSE(ts[i].gov_span.overlaps(ts[i].dep_span));
        EXPECT_TRUE(ts[i].gov_span.contains(ts[i].gov_head));
        EXPECT_TRUE(ts[i].dep_span.contains(ts[i].dep_head));
        if (i > 0) {
          EXPECT_LE(std::pair(ts[i - 1].gov_head, ts[i - 1].dep_head), std::pair(ts[i].gov_head, ts[i].dep_head));
        }
      }
    }
  }
}

class RelationMatch : public ::testing::Test {
 protected:
  // edge gov=owl, rel=nsubj, dep=found
  AnnotatedText text = parse_one(row(1, "owl", "NOUN", 0, "root") + row(2, "found", "VERB", 1, "nsubj"));
  std::array<const AnnotatedText*, 1> against{&text};
};

TEST_F(RelationMatch, ExactForm) {
  EXPECT_TRUE(relation_matches(RelationForm{"owl", "nsubj", "found"}, against, SynonymLexicon{}));
}

TEST_F(RelationMatch, SynonymGroup) {
  const SynonymLexicon syn(std::vector<std::vector<std::string>>{{"bird", "owl"}});
  EXPECT_TRUE(relation_matches(RelationForm{"bird", "nsubj", "found"}, against, syn));
  EXPECT_FALSE(relation_matches(RelationForm{"bird", "nsubj", "found"}, against, SynonymLexicon{}));
}

TEST_F(RelationMatch, LabelMustAgree) {
  EXPECT_FALSE(relation_matches(RelationForm{"owl", "obj", "found"}, against, SynonymLexicon{}));
}

TEST_F(RelationMatch, CaseInsensitiveAndTripleOverload) {
  EXPECT_TRUE(relation_matches(RelationForm{"OWL", "nsubj", "Found"}, against, SynonymLexicon{}));
  const auto other = parse_one(row(1, "Owl", "NOUN", 0, "root") + row(2, "found", "VERB", 1, "nsubj"));
  const auto ts = extract_relations(other);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_TRUE(relation_matches(ts[0], other.tokens, against, SynonymLexicon{}));
}

TEST_F(RelationMatch, MonotoneInAgainst) {
  const auto doc = owl_document();
  const RelationForm f{"owl", "nsubj", "found"};
  std::array<const AnnotatedText*, 3> more{&doc.source, &text, &doc.reference};
  EXPECT_TRUE(relation_matches(f, more, SynonymLexicon{}));
}

TEST(Synonyms, DisjointGroupsAndTsv) {
  EXPECT_THROW(SynonymLexicon(std::vector<std::vector<std::string>>{{"a", "b"}, {"B", "c"}}), Error);
  std::istringstream in("# comment\nfast\tquick\n\nbig\tlarge\thuge\nsolo\n");
  const auto lex = SynonymLexicon::from_tsv(in);
  EXPECT_EQ(lex.groups().size(), 2u);
  EXPECT_TRUE(lex.equivalent("Fast", "quick"));
  EXPECT_TRUE(lex.equivalent("huge", "big"));
  EXPECT_FALSE(lex.equivalent("fast", "big"));
  EXPECT_EQ(lex.group_of("solo"), -1);
}

TEST(Gazetteer, BuildFromMentions) {
  Corpus c{owl_document(), testing::other_document()};
  const auto gaz = build_gazetteer(c);
  EXPECT_EQ(gaz.type_of("south yorkshire"), "GPE");
  EXPECT_EQ(gaz.type_of("rspca"), "ORG");
  EXPECT_EQ(gaz.size(), 5u);  // bettisfield, flintshire, rspca, south yorkshire, london
  EXPECT_EQ(gaz.max_length(), 2u);
  EXPECT_EQ(gaz.sources_of("london"), (std::set<std::string>{"other"}));
  std::ostringstream tsv;
  gaz.write_tsv(tsv);
  EXPECT_EQ(tsv.str().substr(0, 17), "bettisfield\tGPE\nf");
}

TEST(Gazetteer, TwoEntries) {
  Gazetteer g;
  g.add("south yorkshire", "GPE", "d1");
  g.add("rspca", "ORG", "d1");
  EXPECT_EQ(g.size(), 2u);
}

TEST(Gazetteer, MajorityTypeWithSmallestOnTies) {
  Gazetteer g;
  g.add("jordan", "PERSON", "a");
  g.add("jordan", "GPE", "b");
  EXPECT_EQ(g.type_of("jordan"), "GPE");
  g.add("jordan", "PERSON", "c");
  EXPECT_EQ(g.type_of("jordan"), "PERSON");
  EXPECT_EQ(g.type_of("nowhere"), "");
}

TEST(Gazetteer, LeftmostLongest) {
  Gazetteer g;
  g.add("south yorkshire", "GPE", "d");
  g.add("yorkshire", "GPE", "d");
  const auto m = match_entities(make_tokens({"the", "South", "Yorkshire", "police"}), g);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].span, (Span{1, 3}));
  EXPECT_EQ(m[0].etype, "GPE");
  EXPECT_EQ(m[0].surface, "south yorkshire");
}

TEST(Gazetteer, OverlapResolvesToLeftmost) {
  Gazetteer g;
  g.add("new york", "GPE", "d");
  g.add("york city", "GPE", "d");
  const auto tokens = make_tokens({"new", "york", "city"});
  const auto m = match_entities(tokens, g);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].surface, "new york");

  const std::set<std::string> keys{"new york", "york city"};
  const auto best = oracle::best_nonoverlapping(oracle::all_gazetteer_hits({"new", "york", "city"}, keys));
  ASSERT_EQ(best.size(), 1u);
  EXPECT_EQ(best[0], (std::pair<std::size_t, std::size_t>{0, 2}));
}

TEST(Gazetteer, GreedyMatchesBruteForceOnRandomStreams) {
  const std::vector<std::string> words{"a", "b", "c", "d"};
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    Gazetteer g;
    std::set<std::string> keys;
    const int n_keys = 1 + static_cast<int>(gen() % 5);
    for (int k = 0; k < n_keys; ++k) {
      std::string key;
      const int len = 1 + static_cast<int>(gen() % 3);
      for (int i = 0; i < len; ++i) key += (i ? " " : "") + words[gen() % words.size()];
      g.add(key, "T", "x");
      keys.insert(key);
    }
    std::vector<std::string> stream;
    const int len = static_cast<int>(gen() % 9);
    for (int i = 0; i < len; ++i) stream.push_back(words[gen() % words.size()]);
    const auto hits = oracle::all_gazetteer_hits(stream, keys);
    if (hits.size() > 16) continue;
    const auto expect = oracle::best_nonoverlapping(hits);
    const auto got = match_entities(make_tokens(stream), g);
    ASSERT_EQ(got.size(), expect.size()) << "trial " << trial;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].span.start, expect[i].first);
      EXPECT_EQ(got[i].span.end, expect[i].second);
      EXPECT_TRUE(keys.count(got[i].surface));
    }
  }
}

TEST(ConfidenceSpans, ProperNounsAndNumbers) {
  const auto spans = detect_confidence_spans(make_tokens({"Wayne", "Rooney", "scored", "2"}, {"PROPN", "PROPN", "VERB", "NUM"}));
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0], (ConfidenceSpan{Span{0, 2}, ConfClass::kPropn}));
  EXPECT_EQ(spans[1], (ConfidenceSpan{Span{3, 4}, ConfClass::kNumber}));
}

TEST(ConfidenceSpans, NumberByTagOrRegex) {
  auto s = detect_confidence_spans(make_tokens({"1,000", "people"}, {"NUM", "NOUN"}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (ConfidenceSpan{Span{0, 1}, ConfClass::kNumber}));
  s = detect_confidence_spans(make_tokens({"in", "2024", "."}, {"ADP", "X", "PUNCT"}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].cls, ConfClass::kNumber);
}

TEST(ConfidenceSpans, NoneWithoutProperNounsOrNumbers) {
  EXPECT_TRUE(detect_confidence_spans(make_tokens({"the", "cat"}, {"DET", "NOUN"})).empty());
}

TEST(ConfidenceSpans, MaximalAndMatchesOracleFirstTokens) {
  std::mt19937_64 gen(5);
  const std::vector<std::pair<std::string, std::string>> vocab{
      {"Leeds", "PROPN"}, {"City", "PROPN"}, {"3", "NUM"}, {"12", "PROPN"}, {"five", "NUM"}, {"ran", "VERB"}, {"the", "DET"}};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> s, u;
    const int n = static_cast<int>(gen() % 10);
    for (int i = 0; i < n; ++i) {
      const auto& [w, t] = vocab[gen() % vocab.size()];
      s.push_back(w);
      u.push_back(t);
    }
    const auto tokens = make_tokens(s, u);
    const auto spans = detect_confidence_spans(tokens);
    std::vector<std::size_t> firsts;
    for (const auto& cs : spans) firsts.push_back(cs.span.start);
    EXPECT_EQ(firsts, oracle::first_tokens(tokens));
    for (std::size_t i = 1; i < spans.size(); ++i) {
      EXPECT_LE(spans[i - 1].span.end, spans[i].span.start);
      if (spans[i - 1].span.end == spans[i].span.start) {
        EXPECT_NE(spans[i - 1].cls, spans[i].cls);
      }
    }
  }
}

TEST(PosLexicon, MajorityUnknownAndNumerals) {
  PosLexicon lex;
  for (int i = 0; i < 5; ++i) lex.observe("Run", "NOUN");
  for (int i = 0; i < 2; ++i) lex.observe("run", "VERB");
  EXPECT_EQ(lex.tag("run"), "NOUN");
  EXPECT_EQ(lex.tag("RUN"), "NOUN");
  EXPECT_EQ(lex.tag("zyzzyva"), "X");
  EXPECT_EQ(lex.tag("42"), "NUM");
  lex.observe("tie", "VERB");
  lex.observe("tie", "NOUN");
  EXPECT_EQ(lex.tag("tie"), "NOUN");
}

TEST(PosLexicon, TaggingFillsOnlyMissingTags) {
  PosLexicon lex;
  lex.observe("owl", "NOUN");
  const auto all = tag_pos(make_tokens({"owl", "x"}, {"PROPN", "DET"}), lex);
  EXPECT_EQ(all[0].upos, "NOUN");
  EXPECT_EQ(all[1].upos, "X");
  const auto missing = tag_missing_pos(make_tokens({"owl", "owl"}, {"PROPN", ""}), lex);
  EXPECT_EQ(missing[0].upos, "PROPN");
  EXPECT_EQ(missing[1].upos, "NOUN");
}

TEST(PosLexicon, BuiltFromCorpus) {
  const auto lex = build_pos_lexicon(Corpus{owl_document()});
  EXPECT_EQ(lex.tag("Flintshire"), "PROPN");
  EXPECT_EQ(lex.tag("found"), "VERB");
}

}  // namespace
}  // namespace cliff
