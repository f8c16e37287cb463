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

#include "cliff/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cliff/error.hpp"
#include "cliff/rng.hpp"

namespace cliff {

namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double cosine(const Vector& a, const Vector& b) { return dot(a, b) / (norm(a) * norm(b)); }

// ---------------------------------------------------------------------------
// MLP

MlpParams MlpParams::init(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed) {
  MlpParams p;
  p.in = in;
  p.hidden = hidden;
  p.out = out;
  RngState rng(seed);
  auto fill = [&](std::vector<double>& v, std::size_t n, double scale) {
    v.resize(n);
    for (auto& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
  };
  const double s1 = 1.0 / std::sqrt(static_cast<double>(in));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  fill(p.w1, hidden * in, s1);
  fill(p.b1, hidden, s1);
  fill(p.w2, out * hidden, s2);
  fill(p.b2, out, s2);
  return p;
}

MlpParams MlpParams::zeros_like(const MlpParams& p) {
  MlpParams z = p;
  for (auto* v : {&z.w1, &z.b1, &z.w2, &z.b2}) std::fill(v->begin(), v->end(), 0.0);
  return z;
}

std::vector<double> MlpParams::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const auto* v : {&w1, &b1, &w2, &b2}) out.insert(out.end(), v->begin(), v->end());
  return out;
}

void MlpParams::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw Error("MLP parameter count mismatch");
  std::size_t off = 0;
  for (auto* v : {&w1, &b1, &w2, &b2}) {
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(off),
              flat.begin() + static_cast<std::ptrdiff_t>(off + v->size()), v->begin());
    off += v->size();
  }
}

// ---------------------------------------------------------------------------
// Pooling

namespace {

std::vector<std::size_t> selected_rows(const RepMatrix& rep, PoolKind kind, bool& fell_back) {
  fell_back = false;
  std::vector<std::size_t> rows;
  if (kind == PoolKind::kLastToken) return {rep.rows.size() - 1};
  if (kind == PoolKind::kEntityTokens) {
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      if (i < rep.entity_mask.size() && rep.entity_mask[i]) rows.push_back(i);
    }
    if (!rows.empty()) return rows;
    fell_back = true;
  }
  rows.resize(rep.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

}  // namespace

PoolResult pool(const RepMatrix& rep, const PoolingSpec& spec, const MlpParams* mlp) {
  if (rep.rows.empty()) throw Error("cannot pool an empty representation matrix");
  const std::size_t d = rep.dim();
  PoolResult r;
  const auto rows = selected_rows(rep, spec.kind, r.fell_back);
  r.mean.assign(d, 0.0);
  for (auto i : rows) {
    if (rep.rows[i].size() != d) throw Error("ragged representation matrix");
    for (std::size_t c = 0; c < d; ++c) r.mean[c] += rep.rows[i][c];
  }
  for (auto& x : r.mean) x /= static_cast<double>(rows.size());

  if (!spec.use_mlp) {
    r.value = r.mean;
    return r;
  }
  if (!mlp) throw Error("pooling spec requests an MLP but none was given");
  if (mlp->in != d) throw Error("MLP input width does not match representation dimension");
  r.hidden.assign(mlp->hidden, 0.0);
  for (std::size_t j = 0; j < mlp->hidden; ++j) {
    double a = mlp->b1[j];
    for (std::size_t i = 0; i < d; ++i) a += mlp->w1[j * d + i] * r.mean[i];
    r.hidden[j] = std::tanh(a);
  }
  r.value.assign(mlp->out, 0.0);
  for (std::size_t o = 0; o < mlp->out; ++o) {
    double a = mlp->b2[o];
    for (std::size_t j = 0; j < mlp->hidden; ++j) a += mlp->w2[o * mlp->hidden + j] * r.hidden[j];
    r.value[o] = a;
  }
  return r;
}

PoolGrad pool_backward(const RepMatrix& rep, const PoolingSpec& spec, const MlpParams* mlp,
                       const PoolResult& fwd, const Vector& grad_out) {
  const std::size_t d = rep.dim();
  PoolGrad g;
  Vector grad_mean;
  if (spec.use_mlp) {
    if (!mlp) throw Error("pooling spec requests an MLP but none was given");
    MlpParams mg = MlpParams::zeros_like(*mlp);
    const std::size_t h = mlp->hidden;
    Vector grad_a(h, 0.0);
    for (std::size_t o = 0; o < mlp->out; ++o) {
      mg.b2[o] = grad_out[o];
      for (std::size_t j = 0; j < h; ++j) {
        mg.w2[o * h + j] = grad_out[o] * fwd.hidden[j];
        grad_a[j] += mlp->w2[o * h + j] * grad_out[o];
      }
    }
    for (std::size_t j = 0; j < h; ++j) grad_a[j] *= 1.0 - fwd.hidden[j] * fwd.hidden[j];
    grad_mean.assign(d, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
      mg.b1[j] = grad_a[j];
      for (std::size_t i = 0; i < d; ++i) {
        mg.w1[j * d + i] = grad_a[j] * fwd.mean[i];
        grad_mean[i] += mlp->w1[j * d + i] * grad_a[j];
      }
    }
    g.mlp = std::move(mg);
  } else {
    grad_mean = grad_out;
  }

  bool fell_back = false;
  const auto rows = selected_rows(rep, spec.kind, fell_back);
  g.rows.assign(rep.rows.size(), Vector(d, 0.0));
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (auto r : rows) {
    for (std::size_t c = 0; c < d; ++c) g.rows[r][c] = grad_mean[c] * inv;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Contrastive objective

ContrastiveResult contrastive_loss(std::span<const Vector> positives, std::span<const Vector> negatives,
                                   double tau, PairNormalization normalization) {
  const std::size_t np = positives.size();
  if (np < 2) throw Error("contrastive loss needs at least two positives");
  if (!(tau > 0.0)) throw Error("temperature must be > 0");

  std::vector<const Vector*> all;
  for (const auto& v : positives) all.push_back(&v);
  for (const auto& v : negatives) all.push_back(&v);
  const std::size_t m = all.size();
  const std::size_t d = all.front()->size();
  std::vector<double> norms(m);
  for (std::size_t a = 0; a < m; ++a) {
    if (all[a]->size() != d || d == 0) throw Error("contrastive loss: inconsistent vector dimensions");
    norms[a] = norm(*all[a]);
    if (!(norms[a] > 0.0)) throw Error("contrastive loss: zero-norm vector (cosine undefined)");
  }

  const double pairs = normalization == PairNormalization::kBinomial
                           ? static_cast<double>(np * (np - 1)) / 2.0
                           : static_cast<double>(np * (np - 1));
  const double coef = 1.0 / pairs;

  ContrastiveResult r;
  std::vector<Vector> grads(m, Vector(d, 0.0));
  std::vector<double> cosv(m), sims(m), soft(m);
  for (std::size_t i = 0; i < np; ++i) {
    double top = -INFINITY;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      cosv[k] = dot(*all[i], *all[k]) / (norms[i] * norms[k]);
      sims[k] = cosv[k] / tau;
      top = std::max(top, sims[k]);
    }
    double z = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) z += std::exp(sims[k] - top);
    }
    const double lse = top + std::log(z);
    for (std::size_t j = 0; j < np; ++j) {
      if (j != i) r.loss += coef * (lse - sims[j]);
    }

    // d loss / d s_ik, then through the cosine into both endpoints
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      soft[k] = std::exp(sims[k] - lse);
      const double ds = coef * (static_cast<double>(np - 1) * soft[k] - (k < np ? 1.0 : 0.0)) / tau;
      const double inv = 1.0 / (norms[i] * norms[k]);
      const double ci = cosv[k] / (norms[i] * norms[i]);
      const double ck = cosv[k] / (norms[k] * norms[k]);
      for (std::size_t c = 0; c < d; ++c) {
        grads[i][c] += ds * ((*all[k])[c] * inv - ci * (*all[i])[c]);
        grads[k][c] += ds * ((*all[i])[c] * inv - ck * (*all[k])[c]);
      }
    }
  }
  r.grad_pos.assign(grads.begin(), grads.begin() + static_cast<std::ptrdiff_t>(np));
  r.grad_neg.assign(grads.begin() + static_cast<std::ptrdiff_t>(np), grads.end());
  return r;
}

// ---------------------------------------------------------------------------
// Token-level objectives

ScalarGrad cross_entropy(std::span<const double> gold_probs) {
  if (gold_probs.empty()) throw Error("cross-entropy over zero tokens");
  ScalarGrad r;
  const double n = static_cast<double>(gold_probs.size());
  r.grad.resize(gold_probs.size());
  for (std::size_t t = 0; t < gold_probs.size(); ++t) {
    const double p = gold_probs[t];
    if (!(p > 0.0 && p <= 1.0)) {
      throw Error("cross-entropy: probability " + std::to_string(p) + " at token " + std::to_string(t) +
                  " outside (0, 1]");
    }
    r.value -= std::log(p) / n;
    r.grad[t] = -1.0 / (n * p);
  }
  return r;
}

ScalarGrad unlikelihood_loss(std::span<const double> neg_probs) {
  ScalarGrad r;
  r.grad.resize(neg_probs.size());
  for (std::size_t t = 0; t < neg_probs.size(); ++t) {
    const double p = neg_probs[t];
    if (!(p >= 0.0 && p < 1.0)) {
      throw Error("unlikelihood: probability " + std::to_string(p) + " at token " + std::to_string(t) +
                  " outside [0, 1)");
    }
    r.value -= std::log1p(-p);
    r.grad[t] = 1.0 / (1.0 - p);
  }
  return r;
}

void LossConfig::validate() const {
  if (!(tau > 0.0)) throw Error("tau must be > 0");
  if (!(lambda >= 0.0)) throw Error("lambda must be >= 0");
}

LossBreakdown combined_loss(const TrainingBatch& batch, const LossConfig& cfg, const PoolingSpec& spec,
                            LossMode mode, const MlpParams* mlp) {
  cfg.validate();
  const std::string who = "batch '" + batch.doc_id + "': ";
  if (!batch.gold_probs) throw Error(who + "missing gold_probs");
  const auto& probs = *batch.gold_probs;
  const std::size_t np = batch.positives.size();
  const std::size_t nn = batch.negatives.size();
  if (probs.size() != np + nn) throw Error(who + "gold_probs not aligned with samples");
  if (np == 0) throw Error(who + "no positives");

  LossBreakdown out;
  out.grads.probs.resize(np + nn);
  for (std::size_t s = 0; s < np + nn; ++s) out.grads.probs[s].assign(probs[s].size(), 0.0);

  for (std::size_t s = 0; s < np; ++s) {
    const auto ce = cross_entropy(probs[s]);
    out.ce += ce.value / static_cast<double>(np);
    for (std::size_t t = 0; t < ce.grad.size(); ++t) out.grads.probs[s][t] += ce.grad[t] / static_cast<double>(np);
  }

  if (mode == LossMode::kCliff) {
    if (!batch.reps) throw Error(who + "cliff mode needs token representations (reps)");
    const auto& reps = *batch.reps;
    if (reps.size() != np + nn) throw Error(who + "reps not aligned with samples");
    if (spec.use_mlp && !mlp) throw Error(who + "MLP pooling requested without parameters");

    std::vector<PoolResult> pooled;
    std::vector<Vector> pos, neg;
    for (std::size_t s = 0; s < np + nn; ++s) {
      pooled.push_back(pool(reps[s], spec, mlp));
      out.pooling_fallback.push_back(pooled.back().fell_back);
      (s < np ? pos : neg).push_back(pooled.back().value);
    }
    const auto cl = contrastive_loss(pos, neg, cfg.tau, cfg.normalization);
    out.cl = cl.loss;
    if (spec.use_mlp) out.grads.mlp = MlpParams::zeros_like(*mlp);
    for (std::size_t s = 0; s < np + nn; ++s) {
      Vector g = s < np ? cl.grad_pos[s] : cl.grad_neg[s - np];
      for (auto& x : g) x *= cfg.lambda;
      auto pg = pool_backward(reps[s], spec, mlp, pooled[s], g);
      out.grads.reps.push_back(std::move(pg.rows));
      if (pg.mlp) {
        auto acc = out.grads.mlp->flatten();
        const auto add = pg.mlp->flatten();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += add[i];
        out.grads.mlp->assign(acc);
      }
    }
    out.total = out.ce + cfg.lambda * out.cl;
  } else {
    double ul = 0.0;
    for (std::size_t s = np; s < np + nn; ++s) {
      const auto u = unlikelihood_loss(probs[s]);
      ul += u.value / static_cast<double>(nn);
      for (std::size_t t = 0; t < u.grad.size(); ++t) out.grads.probs[s][t] += u.grad[t] / static_cast<double>(nn);
    }
    out.ul = ul;
    out.total = out.ce + ul;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification helpers

GradCheckResult grad_check(const ValueAndGrad& f, std::span<const double> x, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) throw Error("grad_check: step h must lie in [1e-7, 1e-3]");
  std::vector<double> analytic;
  f(x, &analytic);
  if (analytic.size() != x.size()) throw Error("grad_check: gradient size mismatch");
  std::vector<double> probe(x.begin(), x.end());
  GradCheckResult r;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + h;
    const double up = f(probe, nullptr);
    probe[i] = orig - h;
    const double down = f(probe, nullptr);
    probe[i] = orig;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::abs(analytic[i] - numeric) /
                       std::max(1e-8, std::abs(analytic[i]) + std::abs(numeric));
    if (rel > r.max_rel_error) {
      r.max_rel_error = rel;
      r.worst_index = i;
    }
  }
  return r;
}

namespace {

SeparationRecord separation_stats(const std::vector<Vector>& pos, const std::vector<Vector>& neg) {
  SeparationRecord rec;
  double pp = 0.0, pn = 0.0;
  std::size_t npp = 0, npn = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j, ++npp) pp += cosine(pos[i], pos[j]);
    for (const auto& n : neg) {
      pn += cosine(pos[i], n);
      ++npn;
    }
  }
  rec.mean_pos_pos_cos = npp ? pp / static_cast<double>(npp) : 0.0;
  rec.mean_pos_neg_cos = npn ? pn / static_cast<double>(npn) : 0.0;
  return rec;
}

}  // namespace

std::vector<SeparationRecord> demo_separate(std::vector<Vector> positives, std::vector<Vector> negatives,
                                            std::size_t steps, double learning_rate, double tau) {
  if (steps < 1) throw Error("demo_separate: steps must be >= 1");
  if (!(learning_rate > 0.0)) throw Error("demo_separate: learning rate must be > 0");
  std::vector<SeparationRecord> out;
  double lr = learning_rate;
  auto current = contrastive_loss(positives, negatives, tau);
  for (std::size_t step = 0; step < steps; ++step) {
    bool moved = false;
    for (int attempt = 0; attempt < 60 && !moved; ++attempt) {
      auto p2 = positives;
      auto n2 = negatives;
      for (std::size_t i = 0; i < p2.size(); ++i)
        for (std::size_t c = 0; c < p2[i].size(); ++c) p2[i][c] -= lr * current.grad_pos[i][c];
      for (std::size_t i = 0; i < n2.size(); ++i)
        for (std::size_t c = 0; c < n2[i].size(); ++c) n2[i][c] -= lr * current.grad_neg[i][c];
      try {
        auto next = contrastive_loss(p2, n2, tau);
        if (next.loss <= current.loss) {
          positives = std::move(p2);
          negatives = std::move(n2);
          current = std::move(next);
          moved = true;
          break;
        }
      } catch (const Error&) {
        // a vector collapsed to zero; shrink the step like any other overshoot
      }
      lr *= 0.5;
    }
    auto rec = separation_stats(positives, negatives);
    rec.loss = current.loss;
    rec.learning_rate = lr;
    out.push_back(rec);
  }
  return out;
}

}  // namespace cliff
