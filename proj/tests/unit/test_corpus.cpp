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

#include <sstream>

#include "cliff/conllu.hpp"
#include "cliff/error.hpp"
#include "cliff/jsonl.hpp"
#include "fixtures.hpp"

namespace cliff {
namespace {

using testing::owl_document;
using testing::parse_one;
using testing::row;

TEST(Conllu, SingleBTagBecomesMention) {
  const auto t = parse_one(row(1, "John", "PROPN", 2, "nsubj", "NER=B-PERSON") + row(2, "runs", "VERB", 0, "root"));
  ASSERT_EQ(t.entities.size(), 1u);
  EXPECT_EQ(t.entities[0].span, (Span{0, 1}));
  EXPECT_EQ(t.entities[0].etype, "PERSON");
  EXPECT_EQ(t.entities[0].surface, "john");
}

TEST(Conllu, HeadColumnBecomesEdgeAndRootIsDropped) {
  const auto t = parse_one(row(1, "John", "PROPN", 2, "nsubj") + row(2, "runs", "VERB", 0, "root"));
  ASSERT_EQ(t.deps.size(), 1u);
  EXPECT_EQ(t.deps[0], (DepEdge{1, "nsubj", 0}));
  EXPECT_EQ(t.tokens[0].upos, "PROPN");
  EXPECT_EQ(t.tokens[1].index, 1u);
}

TEST(Conllu, NineColumnLineNamesItsLine) {
  const std::string bad = "# text = x\n" + row(1, "a", "DET", 2, "det") + "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\n";
  try {
    parse_conllu(bad);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Conllu, NonIntegerHeadIsAParseError) {
  EXPECT_THROW(parse_conllu("1\ta\ta\tDET\t_\t_\tx\tdet\t_\t_\n"), ParseError);
  EXPECT_THROW(parse_conllu("1\ta\ta\tDET\t_\t_\t1.5\tdet\t_\t_\n"), ParseError);
}

TEST(Conllu, HeadOutOfRangeOrSelfIsAnError) {
  EXPECT_THROW(parse_conllu(row(1, "a", "DET", 5, "det")), ParseError);
  EXPECT_THROW(parse_conllu(row(1, "a", "DET", 1, "det")), ParseError);
}

TEST(Conllu, MultiwordAndEmptyNodesAreSkipped) {
  const std::string s = "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + row(1, "do", "AUX", 3, "aux") +
                        row(2, "n't", "PART", 3, "advmod") + "2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n" +
                        row(3, "go", "VERB", 0, "root");
  const auto t = parse_one(s);
  EXPECT_EQ(t.tokens.size(), 3u);
  EXPECT_EQ(t.deps.size(), 2u);
}

TEST(Conllu, MalformedInsideTagsStartNewMentions) {
  const auto t = parse_one(row(1, "York", "PROPN", 0, "root", "NER=I-GPE") +
                           row(2, "City", "PROPN", 1, "flat", "NER=I-GPE") +
                           row(3, "FC", "PROPN", 1, "flat", "NER=I-ORG"));
  ASSERT_EQ(t.entities.size(), 2u);
  EXPECT_EQ(t.entities[0].span, (Span{0, 2}));
  EXPECT_EQ(t.entities[0].surface, "york city");
  EXPECT_EQ(t.entities[1].span, (Span{2, 3}));
  EXPECT_EQ(t.entities[1].etype, "ORG");
}

TEST(Conllu, ChunksAndQuotesAreRebuilt) {
  const auto doc = owl_document();
  EXPECT_EQ(doc.reference.quotes, (std::vector<Span>{{2, 3}}));
  ASSERT_EQ(doc.reference.np_chunks.size(), 3u);
  EXPECT_EQ(doc.reference.np_chunks[0], (Span{0, 6}));
  EXPECT_EQ(doc.reference.np_chunks[1], (Span{8, 10}));
  EXPECT_EQ(doc.reference.np_chunks[2], (Span{15, 17}));
}

TEST(Conllu, QuoteStyles) {
  auto quotes = [](std::vector<std::string> s) { return detect_quotes(make_tokens(s)); };
  EXPECT_EQ(quotes({"he", "said", "\"", "no", "way", "\"", "."}), (std::vector<Span>{{3, 5}}));
  EXPECT_EQ(quotes({"\xE2\x80\x9C", "yes", "\xE2\x80\x9D"}), (std::vector<Span>{{1, 2}}));
  EXPECT_EQ(quotes({"``", "a", "''", "and", "``", "b", "c", "''"}), (std::vector<Span>{{1, 2}, {5, 7}}));
  EXPECT_TRUE(quotes({"\"", "unterminated"}).empty());
  EXPECT_TRUE(quotes({"``", "''"}).empty());
}

TEST(Conllu, DocumentsAssembleFromComments) {
  const std::string s = "# newdoc id = d1\n# part = source\n" + row(1, "Rain", "NOUN", 2, "nsubj") +
                        row(2, "fell", "VERB", 0, "root") + "\n" + row(1, "It", "PRON", 2, "nsubj") +
                        row(2, "stopped", "VERB", 0, "root") + "\n# part = reference\n" +
                        row(1, "Rain", "NOUN", 0, "root") + "\n";
  const auto corpus = assemble_documents(parse_conllu_sentences(s));
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].id, "d1");
  EXPECT_EQ(corpus[0].source.tokens.size(), 4u);
  EXPECT_EQ(corpus[0].source.deps[1], (DepEdge{3, "nsubj", 2}));
  EXPECT_EQ(corpus[0].reference.tokens.size(), 1u);
}

TEST(Conllu, DocumentWithoutReferenceIsRejected) {
  const std::string s = "# newdoc id = d1\n# part = source\n" + row(1, "Rain", "NOUN", 0, "root") + "\n";
  EXPECT_THROW(assemble_documents(parse_conllu_sentences(s)), Error);
}

TEST(Validate, WellFormedDocumentHasNoViolations) {
  EXPECT_TRUE(validate_document(owl_document()).empty());
}

TEST(Validate, EntityPastEndNamesTheEntity) {
  auto doc = owl_document();
  doc.reference.entities[1].span = Span{19, 25};
  const auto v = validate_document(doc);
  ASSERT_EQ(v.size(), 1u) << v.front();
  EXPECT_NE(v[0].find("entities[1]"), std::string::npos) << v[0];
}

TEST(Validate, OverlappingEntitiesGiveOneViolation) {
  auto doc = owl_document();
  doc.reference.entities.push_back(EntityMention{Span{9, 11}, "GPE", "flintshire is"});
  const auto v = validate_document(doc);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("overlaps"), std::string::npos) << v[0];
}

TEST(Validate, EdgeAndTokenInvariants) {
  auto doc = owl_document();
  doc.source.deps.push_back(DepEdge{2, "x", 2});
  doc.source.tokens[0].index = 7;
  doc.reference.tokens[0].upos = "NOTATAG";
  EXPECT_EQ(validate_document(doc).size(), 3u);
}

TEST(Jsonl, CorpusRoundTrip) {
  Corpus c{owl_document(), testing::other_document(), owl_document()};
  c[2].id = "owl2";
  std::stringstream ss;
  write_corpus(ss, c);
  EXPECT_EQ(read_corpus(ss), c);
}

TEST(Jsonl, MissingReferenceCitesDocId) {
  std::stringstream ss;
  write_corpus(ss, Corpus{owl_document()});
  auto j = nlohmann::json::parse(ss.str());
  j.erase("reference");
  std::stringstream bad(j.dump() + "\n");
  try {
    read_corpus(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("owl"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("reference"), std::string::npos) << e.what();
  }
}

TEST(Jsonl, EmptyFileIsEmptyCorpus) {
  std::stringstream ss;
  EXPECT_TRUE(read_corpus(ss).empty());
}

TEST(Jsonl, DuplicateIdIsRejected) {
  std::stringstream ss;
  write_corpus(ss, Corpus{owl_document(), owl_document()});
  EXPECT_THROW(read_corpus(ss), Error);
}

TEST(Jsonl, BeamProbsMustMatchTokens) {
  std::stringstream ok(
      R"({"doc_id":"d","beams":[{"rank":0,"tokens":["a","b","c","d","e"],"probs":[0.1,0.2,0.3,0.4,0.5]}]})"
      "\n");
  EXPECT_EQ(read_beams(ok).at(0).beams.at(0).tokens.size(), 5u);
  std::stringstream bad(
      R"({"doc_id":"d7","beams":[{"rank":0,"tokens":["a","b","c","d","e"],"probs":[0.1,0.2,0.3,0.4]}]})"
      "\n");
  try {
    read_beams(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("d7"), std::string::npos) << e.what();
  }
}

TEST(Jsonl, BeamCountLimit) {
  std::stringstream ss(R"({"doc_id":"d","beams":[{"rank":0,"tokens":["a"],"probs":[0.5]},)"
                       R"({"rank":1,"tokens":["b"],"probs":[0.5]}]})"
                       "\n");
  EXPECT_THROW(read_beams(ss, 1), Error);
}

TEST(Jsonl, ErrorKindIsCaseInsensitiveAndWrittenLowercase) {
  std::stringstream ss(R"({"doc_id":"d","tokens":["a","b"],"probs":[0.5,0.5],)"
                       R"("errors":[{"start":0,"end":1,"kind":"Extrinsic"}]})"
                       "\n");
  const auto outs = read_outputs(ss);
  ASSERT_EQ(outs.at(0).errors.size(), 1u);
  EXPECT_EQ(outs[0].errors[0].kind, ErrorKind::kExtrinsic);
  std::stringstream back;
  write_outputs(back, outs);
  EXPECT_NE(back.str().find("\"extrinsic\""), std::string::npos);
}

TEST(Jsonl, OutputSpanOutOfRangeIsRejected) {
  std::stringstream ss(R"({"doc_id":"d","tokens":["a"],"probs":[0.5],"errors":[{"start":0,"end":3,"kind":"intrinsic"}]})"
                       "\n");
  EXPECT_THROW(read_outputs(ss), Error);
}

TEST(Jsonl, SamplesAndBatchesRoundTrip) {
  CandidateSample s;
  s.doc_id = "owl";
  s.tokens = make_tokens({"a", "b"}, {"DET", "NOUN"});
  s.label = Label::kNegative;
  s.strategy = Strategy::kMaskRel;
  s.edited_spans = {Span{0, 1}, Span{1, 2}};
  s.gen_probs = std::vector<double>{0.25, 0.125};
  s.relation = RelationForm{"a", "det", "b"};
  std::stringstream ss;
  write_samples(ss, {s});
  EXPECT_EQ(read_samples(ss), std::vector<CandidateSample>{s});

  TrainingBatch b;
  b.doc_id = "owl";
  b.positives = {s, s};
  b.positives[0].label = b.positives[1].label = Label::kPositive;
  b.negatives = {s};
  b.reps = std::vector<RepMatrix>(3, RepMatrix{{{0.1, -0.2}, {1e-17, 3.0}}, {true, false}});
  b.gold_probs = std::vector<std::vector<double>>(3, {0.3, 0.7});
  std::stringstream bs;
  write_batches(bs, {b});
  EXPECT_EQ(read_batches(bs), std::vector<TrainingBatch>{b});
}

TEST(Jsonl, StrategyNamesAcceptKebabAndSnake) {
  EXPECT_EQ(parse_strategy("swap-ent"), Strategy::kSwapEnt);
  EXPECT_EQ(parse_strategy("sys_lowcon"), Strategy::kSysLowCon);
  EXPECT_EQ(to_string(Strategy::kRegenRel), "regen_rel");
  EXPECT_FALSE(parse_strategy("nope").has_value());
}

}  // namespace
}  // namespace cliff
