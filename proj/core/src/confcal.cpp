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

#include "cliff/confcal.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "cliff/error.hpp"
#include "cliff/strategies.hpp"
#include "cliff/text.hpp"

namespace cliff {

// ---------------------------------------------------------------------------
// Threshold tuning

double confidence_score(const AnnotatedOutput& output, const PosLexicon* pos) {
  const auto tokens = pos ? tag_missing_pos(output.tokens, *pos) : output.tokens;
  double score = std::numeric_limits<double>::infinity();
  for (const auto& cs : detect_confidence_spans(tokens)) score = std::min(score, output.probs[cs.span.start]);
  return score;
}

bool has_error(const AnnotatedOutput& output, bool world_knowledge_is_error) {
  return std::any_of(output.errors.begin(), output.errors.end(), [&](const ErrorSpan& e) {
    return e.kind != ErrorKind::kWorldKnowledge || world_knowledge_is_error;
  });
}

namespace {

ThresholdReport confusion(const std::vector<double>& scores, const std::vector<bool>& gold, double t) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] < t;
    if (pred && gold[i]) ++tp;
    else if (pred) ++fp;
    else if (gold[i]) ++fn;
  }
  ThresholdReport r;
  r.threshold = t;
  r.outputs = scores.size();
  r.gold_positives = tp + fn;
  r.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

void score_all(const std::vector<AnnotatedOutput>& outputs, const TuneOptions& opts, std::vector<double>& scores,
               std::vector<bool>& gold) {
  for (const auto& o : outputs) {
    scores.push_back(confidence_score(o, opts.pos));
    gold.push_back(has_error(o, opts.world_knowledge_is_error));
  }
}

}  // namespace

ThresholdReport evaluate_threshold(const std::vector<AnnotatedOutput>& outputs, double threshold,
                                   const TuneOptions& opts) {
  std::vector<double> scores;
  std::vector<bool> gold;
  score_all(outputs, opts, scores, gold);
  auto r = confusion(scores, gold, threshold);
  r.candidate_count = 1;
  return r;
}

ThresholdReport tune_threshold(const std::vector<AnnotatedOutput>& outputs, const TuneOptions& opts) {
  if (outputs.empty()) throw Error("tune_threshold: no annotated outputs");
  std::vector<double> scores;
  std::vector<bool> gold;
  score_all(outputs, opts, scores, gold);

  std::set<double> candidates;
  for (double s : scores) {
    if (std::isfinite(s)) candidates.insert(s);
  }
  if (candidates.empty()) candidates.insert(kDefaultLowConfidenceThreshold);
  else candidates.insert(*candidates.rbegin() + 1e-6);

  ThresholdReport best;
  bool first = true;
  for (double t : candidates) {  // ascending, so strict '>' keeps the smallest on ties
    auto r = confusion(scores, gold, t);
    if (first || r.f1 > best.f1) {
      best = r;
      first = false;
    }
  }
  best.candidate_count = candidates.size();
  return best;
}

// ---------------------------------------------------------------------------
// Histograms

std::string_view to_string(PosClass c) {
  switch (c) {
    case PosClass::kPropn: return "propn";
    case PosClass::kNumber: return "number";
    case PosClass::kNoun: return "noun";
    case PosClass::kVerb: return "verb";
  }
  return "propn";
}

std::string_view to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::kExtrinsic: return "extrinsic";
    case ErrorClass::kIntrinsic: return "intrinsic";
    case ErrorClass::kWorldKnowledge: return "world_knowledge";
    case ErrorClass::kCorrect: return "correct";
  }
  return "correct";
}

std::string_view to_string(SpanPosition p) { return p == SpanPosition::kFirst ? "first" : "nonfirst"; }

namespace {
constexpr std::array<PosClass, 4> kPosClasses{PosClass::kPropn, PosClass::kNumber, PosClass::kNoun,
                                              PosClass::kVerb};
constexpr std::array<ErrorClass, 4> kErrorClasses{ErrorClass::kExtrinsic, ErrorClass::kIntrinsic,
                                                  ErrorClass::kWorldKnowledge, ErrorClass::kCorrect};
constexpr std::array<SpanPosition, 2> kPositions{SpanPosition::kFirst, SpanPosition::kNonFirst};
}  // namespace

HistogramTable::HistogramTable(std::size_t bins) : bins_(bins) {
  if (bins < 2) throw Error("histogram needs at least 2 bins");
  for (std::size_t b = 0; b <= bins; ++b) edges_.push_back(static_cast<double>(b) / static_cast<double>(bins));
  for (auto p : kPosClasses)
    for (auto e : kErrorClasses)
      for (auto s : kPositions) rows_.push_back(HistogramRow{p, e, s, std::vector<std::size_t>(bins, 0)});
}

std::size_t HistogramTable::slot(PosClass p, ErrorClass e, SpanPosition s) {
  return (static_cast<std::size_t>(p) * 4 + static_cast<std::size_t>(e)) * 2 + static_cast<std::size_t>(s);
}

const HistogramRow& HistogramTable::row(PosClass p, ErrorClass e, SpanPosition s) const {
  return rows_[slot(p, e, s)];
}

HistogramRow& HistogramTable::mutable_row(PosClass p, ErrorClass e, SpanPosition s) {
  return rows_[slot(p, e, s)];
}

std::size_t HistogramTable::bin_of(double prob) const {
  const double clamped = std::clamp(prob, 0.0, 1.0);
  return std::min(bins_ - 1, static_cast<std::size_t>(clamped * static_cast<double>(bins_)));
}

void HistogramTable::add(PosClass p, ErrorClass e, SpanPosition s, double prob) {
  ++mutable_row(p, e, s).counts[bin_of(prob)];
}

std::size_t HistogramTable::total() const {
  std::size_t n = 0;
  for (const auto& r : rows_)
    for (auto c : r.counts) n += c;
  return n;
}

void HistogramTable::write_tsv(std::ostream& out) const {
  out << "pos_class\terror_class\tposition\tbin\tlo\thi\tcount\n";
  for (const auto& r : rows_) {
    for (std::size_t b = 0; b < bins_; ++b) {
      out << to_string(r.pos) << '\t' << to_string(r.error) << '\t' << to_string(r.position) << '\t' << b
          << '\t' << edges_[b] << '\t' << edges_[b + 1] << '\t' << r.counts[b] << '\n';
    }
  }
}

void HistogramTable::write_svg(std::ostream& out, PosClass p, SpanPosition s) const {
  constexpr double kW = 720, kH = 360, kLeft = 50, kBottom = 40, kTop = 40;
  constexpr std::array<const char*, 4> kColors{"#c0392b", "#e67e22", "#2980b9", "#7f8c8d"};
  const double plot_w = kW - kLeft - 20;
  const double plot_h = kH - kTop - kBottom;
  const double group_w = plot_w / static_cast<double>(bins_);
  const double bar_w = group_w / 5.0;

  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<text x=\"" << kLeft << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << to_string(p)
      << ", " << to_string(s) << " tokens: probability by error class</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - 20 << "\" y2=\""
      << kH - kBottom << "\" stroke=\"black\"/>\n";
  for (std::size_t e = 0; e < kErrorClasses.size(); ++e) {
    const auto& r = row(p, kErrorClasses[e], s);
    std::size_t sum = 0;
    for (auto c : r.counts) sum += c;
    for (std::size_t b = 0; b < bins_ && sum > 0; ++b) {
      const double h = plot_h * static_cast<double>(r.counts[b]) / static_cast<double>(sum);
      const double x = kLeft + static_cast<double>(b) * group_w + (static_cast<double>(e) + 0.5) * bar_w;
      out << "<rect x=\"" << x << "\" y=\"" << kH - kBottom - h << "\" width=\"" << bar_w << "\" height=\"" << h
          << "\" fill=\"" << kColors[e] << "\"/>\n";
    }
    out << "<text x=\"" << kW - 160 << "\" y=\"" << 40 + 16 * e << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
        << kColors[e] << "\">" << to_string(kErrorClasses[e]) << " (n=" << sum << ")</text>\n";
  }
  for (std::size_t b = 0; b <= bins_; ++b) {
    const double x = kLeft + static_cast<double>(b) * group_w;
    out << "<text x=\"" << x << "\" y=\"" << kH - kBottom + 16 << "\" font-family=\"sans-serif\" font-size=\"10\""
        << " text-anchor=\"middle\">" << edges_[b] << "</text>\n";
  }
  out << "</svg>\n";
}

namespace {

enum class TokenClass { kNone, kPropn, kNumber, kNoun, kVerb };

TokenClass token_class(const Token& t) {
  if (t.upos == "NUM" || looks_numeric(t.surface)) return TokenClass::kNumber;
  if (t.upos == "PROPN") return TokenClass::kPropn;
  if (t.upos == "NOUN") return TokenClass::kNoun;
  if (t.upos == "VERB") return TokenClass::kVerb;
  return TokenClass::kNone;
}

PosClass to_pos_class(TokenClass c) {
  switch (c) {
    case TokenClass::kNumber: return PosClass::kNumber;
    case TokenClass::kNoun: return PosClass::kNoun;
    case TokenClass::kVerb: return PosClass::kVerb;
    default: return PosClass::kPropn;
  }
}

ErrorClass covering_error(const AnnotatedOutput& o, std::size_t i) {
  bool intrinsic = false, world = false;
  for (const auto& e : o.errors) {
    if (!e.span.contains(i)) continue;
    if (e.kind == ErrorKind::kExtrinsic) return ErrorClass::kExtrinsic;
    if (e.kind == ErrorKind::kIntrinsic) intrinsic = true;
    else world = true;
  }
  if (intrinsic) return ErrorClass::kIntrinsic;
  if (world) return ErrorClass::kWorldKnowledge;
  return ErrorClass::kCorrect;
}

}  // namespace

HistogramTable confidence_histogram(const std::vector<AnnotatedOutput>& outputs, std::size_t bins,
                                    const PosLexicon* pos) {
  HistogramTable table(bins);
  for (const auto& o : outputs) {
    const auto tokens = pos ? tag_missing_pos(o.tokens, *pos) : o.tokens;
    TokenClass prev = TokenClass::kNone;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const TokenClass c = token_class(tokens[i]);
      const bool first = c != prev;
      prev = c;
      if (c == TokenClass::kNone) continue;
      table.add(to_pos_class(c), covering_error(o, i), first ? SpanPosition::kFirst : SpanPosition::kNonFirst,
                o.probs[i]);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Metrics

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> la, lb;
  for (const auto& s : a) la.push_back(to_lower(s));
  for (const auto& s : b) lb.push_back(to_lower(s));
  std::vector<std::size_t> prev(lb.size() + 1, 0), cur(lb.size() + 1, 0);
  for (std::size_t i = 1; i <= la.size(); ++i) {
    for (std::size_t j = 1; j <= lb.size(); ++j) {
      cur[j] = la[i - 1] == lb[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[lb.size()];
}

RougeL rouge_l(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis) {
  if (reference.empty() || hypothesis.empty()) throw Error("rouge_l: empty token sequence");
  const double lcs = static_cast<double>(lcs_length(reference, hypothesis));
  RougeL r;
  r.recall = lcs / static_cast<double>(reference.size());
  r.precision = lcs / static_cast<double>(hypothesis.size());
  r.f = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error("pearson: length mismatch");
  if (xs.size() < 2) throw Error("pearson: need at least two points");
  double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    mx += dx / n;
    my += dy / n;
    sxx += dx * (xs[i] - mx);
    syy += dy * (ys[i] - my);
    sxy += dx * (ys[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ErrorRate error_rate(const AnnotatedOutput& output) {
  ErrorRate r;
  std::vector<bool> covered(output.tokens.size(), false);
  for (const auto& e : output.errors) {
    if (e.kind == ErrorKind::kWorldKnowledge) continue;
    ++r.count;
    for (std::size_t i = e.span.start; i < e.span.end && i < covered.size(); ++i) covered[i] = true;
  }
  if (!covered.empty()) {
    r.fraction = static_cast<double>(std::count(covered.begin(), covered.end(), true)) /
                 static_cast<double>(covered.size());
  }
  return r;
}

ErrorRateSummary error_rates(const std::vector<AnnotatedOutput>& outputs) {
  ErrorRateSummary s;
  for (const auto& o : outputs) {
    s.per_output.push_back(error_rate(o));
    s.mean_fraction += s.per_output.back().fraction;
    s.mean_count += static_cast<double>(s.per_output.back().count);
  }
  if (!outputs.empty()) {
    s.mean_fraction /= static_cast<double>(outputs.size());
    s.mean_count /= static_cast<double>(outputs.size());
  }
  return s;
}

}  // namespace cliff
