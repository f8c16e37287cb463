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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cliff/corpus.hpp"
#include "cliff/linguo.hpp"

namespace cliff {

// ---------------------------------------------------------------------------
// Threshold tuning

struct TuneOptions {
  // Count world-knowledge spans as errors when deciding gold positives.
  bool world_knowledge_is_error = false;
  // Tags tokens whose UPOS is empty; may be null.
  const PosLexicon* pos = nullptr;
};

struct ThresholdReport {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t candidate_count = 0;
  std::size_t outputs = 0;
  std::size_t gold_positives = 0;
};

// Minimum first-token probability over proper-noun/number spans; +inf when
// there is none.
double confidence_score(const AnnotatedOutput& output, const PosLexicon* pos = nullptr);
bool has_error(const AnnotatedOutput& output, bool world_knowledge_is_error = false);

// Confusion of "score < threshold" against has_error.
ThresholdReport evaluate_threshold(const std::vector<AnnotatedOutput>& outputs, double threshold,
                                   const TuneOptions& opts = {});

// Scans the distinct finite scores plus (max score + 1e-6) and returns the
// F1-maximizing threshold, ties to the smallest. With no finite score the
// only candidate is the default 0.21. Throws Error on empty input.
ThresholdReport tune_threshold(const std::vector<AnnotatedOutput>& outputs, const TuneOptions& opts = {});

// ---------------------------------------------------------------------------
// Confidence histograms

enum class PosClass { kPropn, kNumber, kNoun, kVerb };
enum class ErrorClass { kExtrinsic, kIntrinsic, kWorldKnowledge, kCorrect };
enum class SpanPosition { kFirst, kNonFirst };

std::string_view to_string(PosClass c);
std::string_view to_string(ErrorClass c);
std::string_view to_string(SpanPosition p);

struct HistogramRow {
  PosClass pos = PosClass::kPropn;
  ErrorClass error = ErrorClass::kCorrect;
  SpanPosition position = SpanPosition::kFirst;
  std::vector<std::size_t> counts;
};

// All 32 (pos, error, position) rows over uniform bins on [0, 1]; a
// probability of exactly 1 falls into the last bin.
class HistogramTable {
 public:
  explicit HistogramTable(std::size_t bins = 10);

  std::size_t bins() const { return bins_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<HistogramRow>& rows() const { return rows_; }
  const HistogramRow& row(PosClass p, ErrorClass e, SpanPosition s) const;
  void add(PosClass p, ErrorClass e, SpanPosition s, double prob);
  std::size_t bin_of(double prob) const;
  std::size_t total() const;

  // pos_class, error_class, position, bin, lo, hi, count
  void write_tsv(std::ostream& out) const;
  // Grouped bars (one group per bin, one bar per error class, heights are
  // within-class fractions) for one pos class and position.
  void write_svg(std::ostream& out, PosClass p, SpanPosition s) const;

 private:
  static std::size_t slot(PosClass p, ErrorClass e, SpanPosition s);
  HistogramRow& mutable_row(PosClass p, ErrorClass e, SpanPosition s);

  std::size_t bins_;
  std::vector<double> edges_;
  std::vector<HistogramRow> rows_;
};

// PROPN -> propn, NUM or numeral -> number, NOUN -> noun, VERB -> verb;
// other tokens are skipped. A token is "first" when it starts a maximal run
// of its class. Covering spans pick the error class (extrinsic over
// intrinsic over world knowledge); uncovered tokens are correct. Throws
// Error when bins < 2.
HistogramTable confidence_histogram(const std::vector<AnnotatedOutput>& outputs, std::size_t bins = 10,
                                    const PosLexicon* pos = nullptr);

// ---------------------------------------------------------------------------
// Metrics

struct RougeL {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

// Summary-level LCS over whole token sequences, case-insensitive, beta = 1.
// Throws Error when either side is empty.
RougeL rouge_l(const std::vector<std::string>& reference, const std::vector<std::string>& hypothesis);
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Product-moment correlation (single-pass, Welford). Throws Error on size
// mismatch, fewer than two points or zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct ErrorRate {
  double fraction = 0.0;  // tokens covered by intrinsic or extrinsic spans
  std::size_t count = 0;  // number of such spans
};

struct ErrorRateSummary {
  std::vector<ErrorRate> per_output;
  double mean_fraction = 0.0;
  double mean_count = 0.0;
};

ErrorRate error_rate(const AnnotatedOutput& output);
ErrorRateSummary error_rates(const std::vector<AnnotatedOutput>& outputs);

}  // namespace cliff
