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

#include "cliff/genkit.hpp"

#include <algorithm>
#include <ostream>

#include "cliff/error.hpp"
#include "cliff/text.hpp"

namespace cliff {

namespace {
constexpr char kSep = '\x1f';
}  // namespace

std::vector<std::string> step_tokens(const std::vector<GenerationStep>& steps) {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.token);
  return out;
}

NGramModel NGramModel::train(const Corpus& corpus, std::size_t order, double smoothing_k) {
  std::vector<std::vector<std::string>> streams;
  for (const auto& doc : corpus) {
    streams.push_back(doc.source.surfaces());
    streams.push_back(doc.reference.surfaces());
  }
  return train(streams, order, smoothing_k);
}

NGramModel NGramModel::train(const std::vector<std::vector<std::string>>& streams, std::size_t order,
                             double smoothing_k) {
  if (order < 2) throw Error("n-gram order must be >= 2");
  if (!(smoothing_k > 0.0)) throw Error("smoothing k must be > 0");
  const bool any = std::any_of(streams.begin(), streams.end(), [](const auto& s) { return !s.empty(); });
  if (!any) throw Error("cannot train an n-gram model on an empty corpus");

  NGramModel m;
  m.order_ = order;
  m.k_ = smoothing_k;
  m.vocab_.insert(kBos);
  m.vocab_.insert(kEos);
  for (const auto& stream : streams) {
    if (stream.empty()) continue;
    std::vector<std::string> padded(order - 1, kBos);
    padded.insert(padded.end(), stream.begin(), stream.end());
    padded.emplace_back(kEos);
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      std::span<const std::string> ctx(padded.data() + i - (order - 1), order - 1);
      const auto key = m.context_key(ctx);
      ++m.counts_[key][padded[i]];
      ++m.totals_[key];
      m.vocab_.insert(padded[i]);
    }
  }
  for (const auto& w : m.vocab_) {
    if (w != kBos) m.outcomes_.push_back(w);
  }
  return m;
}

std::string NGramModel::context_key(std::span<const std::string> history) const {
  const std::size_t need = order_ - 1;
  const std::size_t missing = history.size() >= need ? 0 : need - history.size();
  const std::size_t first = history.size() >= need ? history.size() - need : 0;
  std::string key;
  for (std::size_t i = 0; i < need; ++i) {
    if (i > 0) key.push_back(kSep);
    if (i < missing) key += kBos;
    else key += history[first + (i - missing)];
  }
  return key;
}

std::size_t NGramModel::count(std::span<const std::string> context, const std::string& token) const {
  auto it = counts_.find(context_key(context));
  if (it == counts_.end()) return 0;
  auto jt = it->second.find(token);
  return jt == it->second.end() ? 0 : jt->second;
}

std::size_t NGramModel::context_total(std::span<const std::string> context) const {
  auto it = totals_.find(context_key(context));
  return it == totals_.end() ? 0 : it->second;
}

Distribution NGramModel::next_distribution(std::span<const std::string> history) const {
  const auto key = context_key(history);
  const std::map<std::string, std::size_t>* row = nullptr;
  std::size_t total = 0;
  if (auto it = counts_.find(key); it != counts_.end()) {
    row = &it->second;
    total = totals_.at(key);
  }
  const double denom = static_cast<double>(total) + k_ * static_cast<double>(outcomes_.size());
  Distribution d;
  for (const auto& w : outcomes_) {
    std::size_t c = 0;
    if (row) {
      if (auto jt = row->find(w); jt != row->end()) c = jt->second;
    }
    d.emplace_hint(d.end(), w, (static_cast<double>(c) + k_) / denom);
  }
  return d;
}

double NGramModel::prob(std::span<const std::string> history, const std::string& token) const {
  const auto key = context_key(history);
  std::size_t total = 0;
  std::size_t c = 0;
  if (auto it = counts_.find(key); it != counts_.end()) {
    total = totals_.at(key);
    if (auto jt = it->second.find(token); jt != it->second.end()) c = jt->second;
  }
  return (static_cast<double>(c) + k_) / (static_cast<double>(total) + k_ * static_cast<double>(outcomes_.size()));
}

std::vector<double> NGramModel::sequence_probs(std::span<const std::string> tokens) const {
  std::vector<double> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) out.push_back(prob(tokens.subspan(0, i), tokens[i]));
  return out;
}

void NGramModel::write_tsv(std::ostream& out) const {
  std::map<std::string, const std::map<std::string, std::size_t>*> sorted;
  for (const auto& [key, row] : counts_) sorted.emplace(key, &row);
  for (const auto& [key, row] : sorted) {
    std::string ctx = key;
    std::replace(ctx.begin(), ctx.end(), kSep, ' ');
    for (const auto& [tok, c] : *row) out << ctx << '\t' << tok << '\t' << c << '\n';
  }
}

std::vector<std::pair<std::string, double>> ranked(const Distribution& dist) {
  std::vector<std::pair<std::string, double>> out(dist.begin(), dist.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

Distribution nucleus_filter(const Distribution& dist, double p) {
  const auto order = ranked(dist);
  double total = 0.0;
  for (const auto& [_, q] : order) total += q;
  Distribution kept;
  double cum = 0.0;
  for (const auto& [tok, q] : order) {
    kept.emplace(tok, q);
    cum += q;
    // mass is measured relative to the whole so unnormalized input behaves
    if (cum >= p * total - 1e-12) break;
  }
  for (auto& [_, q] : kept) q /= cum;
  return kept;
}

std::string draw(const Distribution& dist, RngState& rng) {
  const auto order = ranked(dist);
  double total = 0.0;
  for (const auto& [_, q] : order) total += q;
  const double u = rng.uniform() * total;
  double cum = 0.0;
  for (const auto& [tok, q] : order) {
    cum += q;
    if (u < cum) return tok;
  }
  return order.back().first;
}

namespace {

GenerationStep step_from(const Distribution& full, const Distribution& support, double p, RngState& rng) {
  const auto nucleus = nucleus_filter(support, p);
  auto tok = draw(nucleus, rng);
  return GenerationStep{tok, nucleus.at(tok), full.at(tok)};
}

}  // namespace

std::vector<GenerationStep> sample_sequence(const NGramModel& model, std::span<const std::string> prefix,
                                            std::size_t max_len, double nucleus_p, RngState& rng) {
  std::vector<std::string> history(prefix.begin(), prefix.end());
  std::vector<GenerationStep> out;
  while (out.size() < max_len) {
    const auto dist = model.next_distribution(history);
    auto step = step_from(dist, dist, nucleus_p, rng);
    if (step.token == kEos) break;
    history.push_back(step.token);
    out.push_back(std::move(step));
  }
  return out;
}

std::vector<GenerationStep> fill_mask(const NGramModel& model, std::span<const std::string> left,
                                      std::span<const std::string> /*right*/, double nucleus_p,
                                      std::size_t max_fill, RngState& rng) {
  const std::size_t len = 1 + rng.below(std::max<std::size_t>(max_fill, 1));
  std::vector<std::string> history(left.begin(), left.end());
  std::vector<GenerationStep> out;
  for (std::size_t i = 0; i < len; ++i) {
    const auto dist = model.next_distribution(history);
    Distribution words = dist;
    words.erase(kEos);
    double mass = 0.0;
    for (const auto& [_, q] : words) mass += q;
    for (auto& [_, q] : words) q /= mass;
    auto step = step_from(dist, words, nucleus_p, rng);
    history.push_back(step.token);
    out.push_back(std::move(step));
  }
  return out;
}

std::vector<GenerationStep> NGramGenerator::fill(std::span<const std::string> left,
                                                 std::span<const std::string> right, RngState& rng) const {
  return fill_mask(model_, left, right, p_, max_fill_, rng);
}

std::vector<GenerationStep> NGramGenerator::continue_from(std::span<const std::string> prompt,
                                                          std::size_t max_len, RngState& rng) const {
  return sample_sequence(model_, prompt, max_len, p_, rng);
}

std::vector<std::string> SynonymParaphraser::paraphrase(std::span<const std::string> tokens) const {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  std::set<long> used;
  std::size_t subs = 0;
  for (auto& tok : out) {
    if (subs >= max_subs_) break;
    const long g = lexicon_.group_of(tok);
    if (g < 0 || used.count(g)) continue;
    const auto norm = normalize(tok);
    for (const auto& alt : lexicon_.groups()[static_cast<std::size_t>(g)]) {
      if (alt != norm) {
        tok = alt;
        break;
      }
    }
    used.insert(g);
    ++subs;
  }
  return out;
}

}  // namespace cliff
