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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cliff/batch.hpp"

namespace cliff {

enum class PoolKind { kAllTokens, kEntityTokens, kLastToken };

struct PoolingSpec {
  PoolKind kind = PoolKind::kAllTokens;
  bool use_mlp = false;
};

// One-hidden-layer projection: W2 * tanh(W1 * v + b1) + b2. Matrices are
// row-major.
struct MlpParams {
  std::size_t in = 0;
  std::size_t hidden = 0;
  std::size_t out = 0;
  std::vector<double> w1;  // hidden x in
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // out x hidden
  std::vector<double> b2;  // out

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases.
  static MlpParams init(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed);
  static MlpParams zeros_like(const MlpParams& p);

  // Flat view order: w1, b1, w2, b2.
  std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

struct PoolResult {
  Vector value;
  Vector mean;    // pooled rows before the projection
  Vector hidden;  // tanh activations, empty without MLP
  bool fell_back = false;  // entity pooling with no entity token
};

// Throws Error on an empty matrix or when use_mlp is set without params.
PoolResult pool(const RepMatrix& rep, const PoolingSpec& spec, const MlpParams* mlp = nullptr);

struct PoolGrad {
  std::vector<Vector> rows;  // d(out)/d(rep rows), same shape as rep.rows
  std::optional<MlpParams> mlp;
};

PoolGrad pool_backward(const RepMatrix& rep, const PoolingSpec& spec, const MlpParams* mlp,
                       const PoolResult& fwd, const Vector& grad_out);

// How the sum over ordered positive pairs is scaled: by 1/C(|P|,2) as
// written in the objective, or by 1/(|P|(|P|-1)) (mean over ordered pairs).
enum class PairNormalization { kBinomial, kOrderedPairs };

struct ContrastiveResult {
  double loss = 0.0;
  std::vector<Vector> grad_pos;
  std::vector<Vector> grad_neg;
};

// -1/C(|P|,2) * sum_{i != j in P} log( exp(cos(h_i,h_j)/tau) /
//                                      sum_{k in P u N, k != i} exp(cos(h_i,h_k)/tau) )
// Throws Error when |P| < 2, tau <= 0, a vector has zero norm or
// dimensions differ.
ContrastiveResult contrastive_loss(std::span<const Vector> positives, std::span<const Vector> negatives,
                                   double tau = 1.0,
                                   PairNormalization norm = PairNormalization::kBinomial);

struct ScalarGrad {
  double value = 0.0;
  std::vector<double> grad;
};

// Mean over tokens of -log p. Throws Error on p <= 0, p > 1 or no tokens.
ScalarGrad cross_entropy(std::span<const double> gold_probs);

// Sum over tokens of -log(1 - p). Throws Error on p >= 1 or p < 0.
ScalarGrad unlikelihood_loss(std::span<const double> neg_probs);

struct LossConfig {
  double tau = 1.0;
  double lambda = 1.0;
  PairNormalization normalization = PairNormalization::kBinomial;

  void validate() const;
};

enum class LossMode { kCliff, kUnlikelihood };

struct LossBreakdown {
  double ce = 0.0;
  double cl = 0.0;
  std::optional<double> ul;
  double total = 0.0;

  // Gradients of `total`, aligned with positives then negatives.
  struct Grads {
    std::vector<std::vector<Vector>> reps;
    std::vector<std::vector<double>> probs;
    std::optional<MlpParams> mlp;
  } grads;
  std::vector<bool> pooling_fallback;
};

// cliff: total = ce + lambda * cl over pooled (optionally projected) reps.
// unlikelihood: total = ce + ul, where ul averages the per-negative sums.
// ce averages the per-positive token means.
LossBreakdown combined_loss(const TrainingBatch& batch, const LossConfig& cfg, const PoolingSpec& spec,
                            LossMode mode, const MlpParams* mlp = nullptr);

// f(x) with its analytic gradient written to *grad when non-null.
using ValueAndGrad = std::function<double(std::span<const double>, std::vector<double>*)>;

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
};

// Central differences per coordinate against the analytic gradient;
// relative error |a-n| / max(1e-8, |a|+|n|). Throws Error unless
// 1e-7 <= h <= 1e-3.
GradCheckResult grad_check(const ValueAndGrad& f, std::span<const double> x, double h = 1e-5);

struct SeparationRecord {
  double loss = 0.0;
  double mean_pos_pos_cos = 0.0;
  double mean_pos_neg_cos = 0.0;
  double learning_rate = 0.0;
};

// Gradient descent on the contrastive loss directly over the vectors. A step
// that would raise the loss is retried at half the rate. One record per
// step, taken after the step.
std::vector<SeparationRecord> demo_separate(std::vector<Vector> positives, std::vector<Vector> negatives,
                                            std::size_t steps, double learning_rate, double tau = 1.0);

double cosine(const Vector& a, const Vector& b);

}  // namespace cliff
