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

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cliff/error.hpp"
#include "cliff/genkit.hpp"
#include "cliff/rng.hpp"
#include "fixtures.hpp"

namespace cliff {
namespace {

using Streams = std::vector<std::vector<std::string>>;

double mass(const Distribution& d) {
  double s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

TEST(Rng, DeterministicAndInRange) {
  RngState a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  RngState r(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    ++hist[r.below(7)];
  }
  for (int h : hist) EXPECT_GT(h, 800);
  EXPECT_EQ(r.seed(), 1u);
  EXPECT_THROW(r.below(0), Error);
}

TEST(Rng, DerivedSeedsDependOnEveryPart) {
  const auto s = derive_seed(7, "doc1", "swap_ent");
  EXPECT_EQ(s, derive_seed(7, "doc1", "swap_ent"));
  EXPECT_NE(s, derive_seed(8, "doc1", "swap_ent"));
  EXPECT_NE(s, derive_seed(7, "doc2", "swap_ent"));
  EXPECT_NE(s, derive_seed(7, "doc1", "mask_ent"));
  EXPECT_NE(derive_seed(7, "ab", "c"), derive_seed(7, "a", "bc"));
}

TEST(NGram, CountsWithPadding) {
  const auto m = NGramModel::train(Streams{{"a", "b"}}, 2, 0.1);
  const std::vector<std::string> bos{kBos}, a{"a"}, b{"b"};
  EXPECT_EQ(m.count(bos, "a"), 1u);
  EXPECT_EQ(m.count(a, "b"), 1u);
  EXPECT_EQ(m.count(b, kEos), 1u);
  EXPECT_EQ(m.context_total(a), 1u);
  EXPECT_EQ(m.count(a, "a"), 0u);
  EXPECT_EQ(m.vocab(), (std::set<std::string>{kBos, kEos, "a", "b"}));
  std::ostringstream dump;
  m.write_tsv(dump);
  EXPECT_EQ(dump.str(), "<s>\ta\t1\na\tb\t1\nb\t</s>\t1\n");
}

TEST(NGram, AddKFormula) {
  for (double k : {0.1, 0.5, 1.0}) {
    const auto m = NGramModel::train(Streams{{"a", "b"}}, 2, k);
    const double v = static_cast<double>(m.outcomes().size());
    EXPECT_EQ(v, 3.0);  // a, b, </s>
    const std::vector<std::string> a{"a"};
    EXPECT_NEAR(m.prob(a, "b"), (1 + k) / (1 + k * v), 1e-15);
    EXPECT_NEAR(m.prob(a, "a"), k / (1 + k * v), 1e-15);
  }
}

TEST(NGram, UnseenContextIsUniform) {
  const auto m = NGramModel::train(Streams{{"a", "b"}, {"b", "c"}}, 3, 0.1);
  const std::vector<std::string> h{"c", "c"};
  const auto d = m.next_distribution(h);
  ASSERT_EQ(d.size(), m.outcomes().size());
  for (const auto& [tok, p] : d) EXPECT_NEAR(p, 1.0 / static_cast<double>(d.size()), 1e-15);
  EXPECT_EQ(d.count(kBos), 0u);
}

TEST(NGram, DistributionsSumToOne) {
  const auto corpus = testing::synthetic_corpus();
  const auto m = NGramModel::train(corpus);
  EXPECT_EQ(m.order(), 3u);
  EXPECT_DOUBLE_EQ(m.smoothing_k(), 0.1);
  for (const auto& doc : corpus) {
    const auto s = doc.reference.surfaces();
    for (std::size_t i = 0; i <= s.size(); ++i) {
      const std::span<const std::string> h(s.data(), i);
      EXPECT_NEAR(mass(m.next_distribution(h)), 1.0, 1e-9);
    }
  }
}

TEST(NGram, RejectsBadArguments) {
  EXPECT_THROW(NGramModel::train(Corpus{}), Error);
  EXPECT_THROW(NGramModel::train(Streams{{"a"}}, 1, 0.1), Error);
  EXPECT_THROW(NGramModel::train(Streams{{"a"}}, 2, 0.0), Error);
}

TEST(NGram, SequenceProbsUseFreshContext) {
  const auto m = NGramModel::train(Streams{{"a", "b"}}, 2, 0.1);
  const std::vector<std::string> seq{"a", "b"};
  const auto p = m.sequence_probs(seq);
  const std::vector<std::string> bos{kBos}, a{"a"};
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0], m.prob(bos, "a"));
  EXPECT_DOUBLE_EQ(p[1], m.prob(a, "b"));
}

TEST(Nucleus, WorkedExample) {
  const auto d = nucleus_filter({{"a", 0.5}, {"b", 0.3}, {"c", 0.2}}, 0.7);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.at("a"), 0.625, 1e-15);
  EXPECT_NEAR(d.at("b"), 0.375, 1e-15);
}

TEST(Nucleus, FullMassAndSingleton) {
  const Distribution d{{"a", 0.5}, {"b", 0.3}, {"c", 0.2}};
  const auto f = nucleus_filter(d, 1.0);
  ASSERT_EQ(f.size(), 3u);
  for (const auto& [k, v] : d) EXPECT_NEAR(f.at(k), v, 1e-15);
  const auto one = nucleus_filter({{"z", 1.0}}, 0.01);
  EXPECT_EQ(one, (Distribution{{"z", 1.0}}));
}

TEST(Nucleus, TiesBreakLexicographically) {
  const auto f = nucleus_filter({{"b", 0.25}, {"a", 0.25}, {"d", 0.25}, {"c", 0.25}}, 0.5);
  EXPECT_EQ(f, (Distribution{{"a", 0.5}, {"b", 0.5}}));
}

TEST(Nucleus, KeptSetIsMinimal) {
  RngState rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Distribution d;
    double total = 0;
    const std::size_t n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 0.01 + rng.uniform();
      d["t" + std::to_string(i)] = w;
      total += w;
    }
    for (auto& [k, v] : d) v /= total;
    const double p = 0.05 + 0.95 * rng.uniform();
    const auto f = nucleus_filter(d, p);
    EXPECT_NEAR(mass(f), 1.0, 1e-12);
    double kept = 0, smallest = 1;
    for (const auto& [k, v] : f) {
      kept += d.at(k);
      smallest = std::min(smallest, d.at(k));
    }
    EXPECT_GE(kept, p - 1e-12);
    EXPECT_LT(kept - smallest, p);
    for (const auto& [k, v] : d) {
      if (!f.count(k)) {
        EXPECT_LE(v, smallest);
      }
    }
  }
}

TEST(Sampling, DeterministicAndInsideNucleus) {
  const auto corpus = testing::synthetic_corpus();
  const auto m = NGramModel::train(corpus);
  const std::vector<std::string> prefix{"A", "``", "rare", "''"};
  // smoothing mass can put </s> in the nucleus, so some draws stop at once
  std::size_t non_empty = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngState r1(seed), r2(seed);
    const auto a = sample_sequence(m, prefix, 25, 0.7, r1);
    EXPECT_EQ(a, sample_sequence(m, prefix, 25, 0.7, r2));
    non_empty += !a.empty();
    EXPECT_LE(a.size(), 25u);
    std::vector<std::string> hist = prefix;
    for (const auto& step : a) {
      const auto full = m.next_distribution(hist);
      const auto nuc = nucleus_filter(full, 0.7);
      ASSERT_TRUE(nuc.count(step.token)) << step.token;
      EXPECT_DOUBLE_EQ(step.prob, nuc.at(step.token));
      EXPECT_DOUBLE_EQ(step.raw_prob, full.at(step.token));
      EXPECT_NE(step.token, kEos);
      hist.push_back(step.token);
    }
  }
  EXPECT_GT(non_empty, 0u);
}

TEST(Sampling, OnlyTheLastContextTokensMatter) {
  const auto m = NGramModel::train(testing::synthetic_corpus());
  const std::vector<std::string> long_prefix{"Staff", "at", "the", "RSPCA", "said", "the"};
  const std::vector<std::string> short_prefix{"said", "the"};
  RngState r1(9), r2(9);
  EXPECT_EQ(sample_sequence(m, long_prefix, 10, 0.7, r1), sample_sequence(m, short_prefix, 10, 0.7, r2));
}

TEST(Sampling, StopsAtEndMarker) {
  const auto m = NGramModel::train(Streams{{"a", "b"}}, 2, 1e-9);
  RngState rng(1);
  const std::vector<std::string> prefix{"a"};
  EXPECT_EQ(step_tokens(sample_sequence(m, prefix, 10, 0.7, rng)), (std::vector<std::string>{"b"}));
}

TEST(FillMask, LengthVocabAndReproducibility) {
  const auto m = NGramModel::train(testing::synthetic_corpus());
  const std::vector<std::string> left{"found", "in"}, right{"is", "now"};
  std::set<std::size_t> lengths;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngState r1(seed), r2(seed);
    const auto f = fill_mask(m, left, right, 0.7, 3, r1);
    EXPECT_EQ(f, fill_mask(m, left, right, 0.7, 3, r2));
    lengths.insert(f.size());
    for (const auto& s : f) {
      EXPECT_TRUE(m.vocab().count(s.token));
      EXPECT_NE(s.token, kEos);
      EXPECT_NE(s.token, kBos);
    }
  }
  EXPECT_EQ(lengths, (std::set<std::size_t>{1, 2, 3}));
}

TEST(FillMask, RightContextIsIgnored) {
  const auto m = NGramModel::train(testing::synthetic_corpus());
  const std::vector<std::string> left{"in"}, r1{"is"}, r2{"weighs", "300"};
  RngState a(4), b(4);
  EXPECT_EQ(fill_mask(m, left, r1, 0.7, 3, a), fill_mask(m, left, r2, 0.7, 3, b));
}

TEST(Paraphraser, SynonymSubstitution) {
  const SynonymLexicon empty;
  const std::vector<std::string> in{"a", "fast", "owl"};
  EXPECT_EQ(SynonymParaphraser(empty).paraphrase(in), in);
  const SynonymLexicon lex(std::vector<std::vector<std::string>>{{"fast", "quick"}});
  EXPECT_EQ(SynonymParaphraser(lex).paraphrase(in), (std::vector<std::string>{"a", "quick", "owl"}));
}

TEST(Paraphraser, AtMostMOnePerGroupSameLength) {
  const SynonymLexicon lex(std::vector<std::vector<std::string>>{{"fast", "quick"}, {"big", "large"}, {"owl", "bird"}});
  const std::vector<std::string> in{"fast", "fast", "big", "owl", "big"};
  const auto two = SynonymParaphraser(lex).paraphrase(in);
  EXPECT_EQ(two, (std::vector<std::string>{"quick", "fast", "large", "owl", "big"}));
  const auto three = SynonymParaphraser(lex, 3).paraphrase(in);
  EXPECT_EQ(three, (std::vector<std::string>{"quick", "fast", "large", "bird", "big"}));
  EXPECT_EQ(SynonymParaphraser(lex, 0).paraphrase(in), in);
}

}  // namespace
}  // namespace cliff
