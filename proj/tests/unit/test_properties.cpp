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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cliff/conllu.hpp"
#include "cliff/error.hpp"
#include "cliff/jsonl.hpp"
#include "cliff/linguo.hpp"
#include "cliff/objectives.hpp"
#include "cliff/rng.hpp"
#include "cliff/strategies.hpp"
#include "cliff/text.hpp"
#include "fixtures.hpp"

namespace cliff {
namespace {

std::string synthetic_conllu() {
  std::ifstream in(testing::data_dir() / "corpus.conllu", std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Either texts that satisfy every invariant, or a located ParseError.
void expect_total(std::string_view input) {
  try {
    for (const auto& t : parse_conllu(input)) EXPECT_TRUE(validate_text(t, "text").empty());
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 1u);
  }
}

TEST(ParserTotality, RandomBytes) {
  RngState rng(1);
  const std::string alphabet = "0123456789\t\n-_|=.#abcBIO ";
  for (int i = 0; i < 2000; ++i) {
    std::string s(rng.below(200), ' ');
    for (auto& c : s) c = rng.below(4) ? alphabet[rng.below(alphabet.size())] : static_cast<char>(rng.below(256));
    expect_total(s);
  }
}

TEST(ParserTotality, MutatedValidInput) {
  const std::string base = synthetic_conllu().substr(0, 6000);
  RngState rng(2);
  for (int i = 0; i < 500; ++i) {
    std::string s = base;
    const auto edits = 1 + rng.below(5);
    for (std::size_t e = 0; e < edits; ++e) {
      const auto pos = rng.below(s.size());
      switch (rng.below(3)) {
        case 0: s[pos] = "\t\n0-_9|="[rng.below(8)]; break;
        case 1: s.erase(pos, 1 + rng.below(10)); break;
        default: s.insert(pos, std::string(1, static_cast<char>(rng.below(128)))); break;
      }
    }
    expect_total(s);
  }
}

TEST(CorpusProperties, RoundTripAndMentionSurfaces) {
  const auto corpus = testing::synthetic_corpus();
  ASSERT_EQ(corpus.size(), 20u);
  std::stringstream ss;
  write_corpus(ss, corpus);
  EXPECT_EQ(read_corpus(ss), corpus);
  for (const auto& d : corpus) {
    EXPECT_TRUE(validate_document(d).empty());
    for (const auto* t : {&d.source, &d.reference})
      for (const auto& e : t->entities) EXPECT_EQ(e.surface, normalize(t->surfaces(e.span)));
  }
}

TEST(LinguoProperties, MatchesAndSpansOnCorpus) {
  const auto corpus = testing::synthetic_corpus();
  const auto gaz = build_gazetteer(corpus);
  for (const auto& d : corpus) {
    const auto& toks = d.reference.tokens;
    const auto hits = match_entities(toks, gaz);
    for (std::size_t i = 0; i < hits.size(); ++i) {
      EXPECT_TRUE(gaz.contains(hits[i].surface));
      if (i) {
        EXPECT_LE(hits[i - 1].span.end, hits[i].span.start);
      }
    }
    const auto spans = detect_confidence_spans(toks);
    for (const auto& cs : spans) {
      const auto same = [&](std::size_t i) {
        const auto c = detect_confidence_spans({toks[i]});
        return !c.empty() && c[0].cls == cs.cls;
      };
      if (cs.span.start > 0) {
        EXPECT_FALSE(same(cs.span.start - 1));
      }
      if (cs.span.end < toks.size()) {
        EXPECT_FALSE(same(cs.span.end));
      }
    }
    for (const auto& t : extract_relations(d.reference)) {
      EXPECT_TRUE(t.gov_span.end <= t.dep_span.start || t.dep_span.end <= t.gov_span.start);
    }
  }
}

TEST(StrategyProperties, SwapEntEditsOneTypedRegion) {
  std::size_t checked = 0;
  for (const auto& d : testing::synthetic_corpus()) {
    RngState rng(derive_seed(3, d.id, "swap"));
    const auto ref = d.reference.surfaces();
    for (const auto& s : swap_ent(d, rng)) {
      // some reference entity replaced wholesale by a differently-surfaced
      // source entity of the same type
      bool found = false;
      for (const auto& re : d.reference.entities)
        for (const auto& se : d.source.entities) {
          if (se.etype != re.etype || se.surface == re.surface) continue;
          std::vector<std::string> expect(ref.begin(), ref.begin() + static_cast<long>(re.span.start));
          const auto mid = d.source.surfaces(se.span);
          expect.insert(expect.end(), mid.begin(), mid.end());
          expect.insert(expect.end(), ref.begin() + static_cast<long>(re.span.end), ref.end());
          found = found || expect == s.surfaces();
        }
      EXPECT_TRUE(found) << d.id;
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
}

TEST(LossProperties, PermutationAndStrictGrowth) {
  RngState rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> pos(2 + rng.below(3)), neg(rng.below(4));
    for (auto* set : {&pos, &neg})
      for (auto& v : *set) {
        v.resize(5);
        for (auto& x : v) x = rng.uniform() * 2 - 1;
      }
    const double l = contrastive_loss(pos, neg).loss;
    auto p2 = pos, n2 = neg;
    std::reverse(p2.begin(), p2.end());
    std::rotate(n2.begin(), n2.begin() + (n2.empty() ? 0 : 1), n2.end());
    EXPECT_NEAR(contrastive_loss(p2, n2).loss, l, 1e-12);
    n2.push_back(Vector{0.1, -0.4, 0.2, 0.9, -0.3});
    EXPECT_GT(contrastive_loss(pos, n2).loss, l);
  }
}

}  // namespace
}  // namespace cliff
