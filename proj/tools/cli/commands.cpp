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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "cliff/conllu.hpp"
#include "cliff/error.hpp"
#include "cliff/features.hpp"
#include "cliff/genkit.hpp"
#include "cliff/jsonl.hpp"
#include "cliff/linguo.hpp"
#include "cliff/rng.hpp"
#include "cliff/text.hpp"
#include "context.hpp"
#include "pool.hpp"

namespace cliff::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

SynonymLexicon load_synonyms(RunContext& ctx) {
  const auto& p = ctx.cfg().paths.synonyms;
  if (!ctx.has(p)) return {};
  return SynonymLexicon::from_tsv(ctx.input("synonyms", p));
}

std::map<std::string, std::vector<CandidateSample>> group_samples(const std::vector<CandidateSample>& samples,
                                                                  const Corpus& corpus, const char* what) {
  std::set<std::string> ids;
  for (const auto& d : corpus) ids.insert(d.id);
  std::map<std::string, std::vector<CandidateSample>> out;
  for (const auto& s : samples) {
    if (!ids.count(s.doc_id)) throw Error(std::string(what) + ": sample for unknown doc '" + s.doc_id + "'");
    out[s.doc_id].push_back(s);
  }
  return out;
}

std::map<std::string, const Document*> index_corpus(const Corpus& corpus) {
  std::map<std::string, const Document*> out;
  for (const auto& d : corpus) out[d.id] = &d;
  return out;
}

PosLexicon optional_pos(RunContext& ctx, std::optional<Corpus>& holder) {
  if (!ctx.has(ctx.cfg().paths.corpus)) return {};
  holder = load_corpus(ctx);
  return build_pos_lexicon(*holder);
}

}  // namespace

int cmd_ingest(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto text = read_file(ctx.input("conllu", cfg.paths.conllu));
  auto corpus = assemble_documents(parse_conllu_sentences(text));
  std::sort(corpus.begin(), corpus.end(), [](const Document& a, const Document& b) { return a.id < b.id; });
  for (const auto& doc : corpus) {
    const auto problems = validate_document(doc);
    if (!problems.empty()) throw Error("doc '" + doc.id + "': " + problems.front());
  }

  std::ostringstream c;
  write_corpus(c, corpus);
  ctx.write("corpus.jsonl", c.str());

  std::ostringstream g;
  build_gazetteer(corpus).write_tsv(g);
  ctx.write("gazetteer.tsv", g.str());

  std::ostringstream m;
  NGramModel::train(corpus, cfg.lm_order, cfg.lm_smoothing).write_tsv(m);
  ctx.write("lm.tsv", m.str());

  ctx.out() << "ingested " << corpus.size() << " documents\n";
  return 0;
}

int cmd_construct(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto strategies = parse_strategy_list(cfg.strategies);
  const bool wants_beams =
      std::find(strategies.begin(), strategies.end(), Strategy::kSysLowCon) != strategies.end();
  if (wants_beams && !ctx.has(cfg.paths.beams)) {
    throw UsageError("construct: sys_lowcon needs --beams");
  }
  cfg.strategy.validate();

  const auto corpus = load_corpus(ctx);
  const auto docs = index_corpus(corpus);
  std::map<std::string, BeamSet> beams;
  if (wants_beams) {
    for (auto& b : read_beams(ctx.input("beams", cfg.paths.beams), cfg.max_beams)) {
      if (!docs.count(b.doc_id)) throw Error("beams: unknown doc '" + b.doc_id + "'");
      const auto id = b.doc_id;
      if (!beams.emplace(id, std::move(b)).second) throw Error("beams: duplicate doc '" + id + "'");
    }
  }
  const auto synonyms = load_synonyms(ctx);

  const auto model = NGramModel::train(corpus, cfg.lm_order, cfg.lm_smoothing);
  const NGramGenerator generator(model, cfg.strategy.nucleus_p, cfg.strategy.fill_len_max);
  const auto gazetteer = build_gazetteer(corpus);
  const auto pos = build_pos_lexicon(corpus);
  ConstructionContext cc;
  cc.generator = &generator;
  cc.gazetteer = &gazetteer;
  cc.synonyms = &synonyms;
  cc.pos = &pos;
  cc.config = cfg.strategy;
  cc.seed = cfg.seed;

  const auto per_doc = parallel_map(corpus.size(), cfg.workers, [&](std::size_t i) {
    const auto it = beams.find(corpus[i].id);
    return construct_negatives(corpus[i], strategies, it == beams.end() ? nullptr : &it->second, cc);
  });

  std::vector<CandidateSample> all;
  std::map<Strategy, std::set<std::string>> docs_hit;
  for (const auto& v : per_doc) {
    for (const auto& s : v) {
      docs_hit[s.strategy].insert(s.doc_id);
      all.push_back(s);
    }
  }
  std::ostringstream n;
  write_samples(n, all);
  ctx.write("negatives.jsonl", n.str());

  const auto counts = count_by_strategy(all);
  std::ostringstream t;
  t << "strategy\tsamples\tdocuments\tper_document\n";
  for (const auto s : strategies) {
    const auto it = counts.find(s);
    const std::size_t c = it == counts.end() ? 0 : it->second;
    const double mean = corpus.empty() ? 0.0 : static_cast<double>(c) / static_cast<double>(corpus.size());
    t << to_string(s) << '\t' << c << '\t' << docs_hit[s].size() << '\t' << fixed(mean, 2) << '\n';
  }
  ctx.write("construct_stats.tsv", t.str());
  ctx.out() << t.str();
  return 0;
}

int cmd_positive(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto corpus = load_corpus(ctx);
  const auto synonyms = load_synonyms(ctx);
  const auto gazetteer = build_gazetteer(corpus);
  const SynonymParaphraser paraphraser(synonyms, cfg.max_substitutions);

  const auto per_doc = parallel_map(corpus.size(), cfg.workers,
                                    [&](std::size_t i) { return build_positive(corpus[i], paraphraser, gazetteer); });
  std::vector<CandidateSample> all;
  std::size_t paraphrases = 0;
  for (const auto& v : per_doc) {
    for (const auto& s : v) {
      if (s.strategy == Strategy::kBacktranslate) ++paraphrases;
      all.push_back(s);
    }
  }
  std::ostringstream p;
  write_samples(p, all);
  ctx.write("positives.jsonl", p.str());
  ctx.out() << "positives: " << all.size() << " (" << paraphrases << " paraphrases kept)\n";
  return 0;
}

int cmd_batch(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  cfg.strategy.validate();
  if (cfg.dim == 0) throw UsageError("batch: --dim must be at least 1");
  const auto corpus = load_corpus(ctx);
  const auto negatives = group_samples(read_samples(ctx.input("negatives", cfg.paths.negatives)), corpus, "negatives");
  std::map<std::string, std::vector<CandidateSample>> positives;
  if (ctx.has(cfg.paths.positives)) {
    positives = group_samples(read_samples(ctx.input("positives", cfg.paths.positives)), corpus, "positives");
    for (const auto& [id, v] : positives) {
      for (const auto& s : v) {
        if (s.label != Label::kPositive) throw Error("positives: doc '" + id + "' has a negative sample");
      }
    }
  }
  for (const auto& [id, v] : negatives) {
    for (const auto& s : v) {
      if (s.label != Label::kNegative) throw Error("negatives: doc '" + id + "' has a positive sample");
    }
  }

  const auto model = NGramModel::train(corpus, cfg.lm_order, cfg.lm_smoothing);
  const auto gazetteer = build_gazetteer(corpus);
  const auto feature_seed = derive_seed(cfg.seed, "", "features");
  static const std::vector<CandidateSample> kNone;

  const auto batches = parallel_map(corpus.size(), cfg.workers, [&](std::size_t i) {
    const auto& doc = corpus[i];
    const auto pit = positives.find(doc.id);
    auto pos = pit == positives.end() ? std::vector<CandidateSample>{reference_sample(doc)} : pit->second;
    const auto nit = negatives.find(doc.id);
    RngState rng(derive_seed(cfg.seed, doc.id, "batch"));
    auto b = assemble_batch(doc.id, std::move(pos), nit == negatives.end() ? kNone : nit->second, cfg.strategy, rng);
    attach_features(b, model, gazetteer, cfg.dim, feature_seed);
    return b;
  });

  std::ostringstream b;
  write_batches(b, batches);
  ctx.write("batches.jsonl", b.str());
  const auto empty = std::count_if(batches.begin(), batches.end(), [](const auto& x) { return x.no_negatives; });
  ctx.out() << "batches: " << batches.size() << " (" << empty << " without negatives)\n";
  return 0;
}

int cmd_loss(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  LossConfig lc = cfg.loss;
  lc.normalization = cfg.ordered_pairs ? PairNormalization::kOrderedPairs : PairNormalization::kBinomial;
  try {
    lc.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("loss: ") + e.what());
  }
  const auto spec = parse_pooling(cfg);
  const auto mode = parse_mode(cfg.mode);
  const auto batches = read_batches(ctx.input("batches", cfg.paths.batches));

  std::optional<MlpParams> mlp;
  if (spec.use_mlp && mode == LossMode::kCliff) {
    std::size_t dim = 0;
    for (const auto& b : batches) {
      if (!b.reps) continue;
      for (const auto& r : *b.reps) {
        if (r.rows.empty()) continue;
        if (dim == 0) dim = r.dim();
        if (r.dim() != dim) throw Error("batch '" + b.doc_id + "': representation width differs across batches");
      }
    }
    if (dim == 0) throw Error("loss: no token representations to size the MLP");
    mlp = MlpParams::init(dim, dim, dim, derive_seed(cfg.seed, "", "mlp"));
  }

  const auto results = parallel_map(batches.size(), cfg.workers, [&](std::size_t i) {
    return combined_loss(batches[i], lc, spec, mode, mlp ? &*mlp : nullptr);
  });

  json rows = json::array();
  double ce = 0, cl = 0, ul = 0, total = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    double sq = 0;
    for (const auto& sample : r.grads.reps) {
      for (const auto& row : sample) {
        for (double g : row) sq += g * g;
      }
    }
    for (const auto& sample : r.grads.probs) {
      for (double g : sample) sq += g * g;
    }
    if (r.grads.mlp) {
      for (double g : r.grads.mlp->flatten()) sq += g * g;
    }
    json row{{"doc_id", batches[i].doc_id},
             {"positives", batches[i].positives.size()},
             {"negatives", batches[i].negatives.size()},
             {"ce", r.ce},
             {"total", r.total},
             {"grad_norm", std::sqrt(sq)},
             {"pooling_fallback", std::count(r.pooling_fallback.begin(), r.pooling_fallback.end(), true)}};
    if (mode == LossMode::kCliff) row["cl"] = r.cl;
    if (r.ul) row["ul"] = *r.ul;
    rows.push_back(std::move(row));
    ce += r.ce;
    cl += r.cl;
    ul += r.ul.value_or(0.0);
    total += r.total;
  }
  const double n = results.empty() ? 1.0 : static_cast<double>(results.size());
  json mean{{"ce", ce / n}, {"total", total / n}};
  if (mode == LossMode::kCliff) mean["cl"] = cl / n;
  if (mode == LossMode::kUnlikelihood) mean["ul"] = ul / n;
  const json report{{"mode", cfg.mode},
                    {"tau", lc.tau},
                    {"lambda", lc.lambda},
                    {"normalization", cfg.ordered_pairs ? "ordered_pairs" : "binomial"},
                    {"pooling", cfg.pooling},
                    {"mlp", spec.use_mlp},
                    {"batches", rows},
                    {"mean", mean}};
  ctx.write("loss.json", dump_json(report));
  ctx.out() << "loss (" << cfg.mode << ") over " << results.size() << " batches: mean total "
            << fixed(total / n) << "\n";
  return 0;
}

namespace {

std::vector<double> random_vec(RngState& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

std::vector<Vector> unflatten(std::span<const double> x, std::size_t offset, std::size_t count, std::size_t d) {
  std::vector<Vector> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].assign(x.begin() + static_cast<long>(offset + i * d), x.begin() + static_cast<long>(offset + (i + 1) * d));
  }
  return out;
}

}  // namespace

int cmd_gradcheck(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  if (cfg.instances == 0) throw UsageError("gradcheck: --instances must be at least 1");
  if (!(cfg.step >= 1e-7 && cfg.step <= 1e-3)) throw UsageError("gradcheck: --step must lie in [1e-7, 1e-3]");
  RngState rng(derive_seed(cfg.seed, "", "gradcheck"));
  std::map<std::string, double> worst{
      {"contrastive", 0.0}, {"pooling_mlp", 0.0}, {"cross_entropy", 0.0}, {"unlikelihood", 0.0}};
  const auto norm = cfg.ordered_pairs ? PairNormalization::kOrderedPairs : PairNormalization::kBinomial;

  for (std::size_t it = 0; it < cfg.instances; ++it) {
    {
      const std::size_t np = 2 + rng.below(3), nn = rng.below(5), d = 2 + rng.below(5);
      const auto x = random_vec(rng, (np + nn) * d, -1.0, 1.0);
      const ValueAndGrad f = [&](std::span<const double> v, std::vector<double>* g) {
        const auto r = contrastive_loss(unflatten(v, 0, np, d), unflatten(v, np * d, nn, d), cfg.loss.tau, norm);
        if (g) {
          g->clear();
          for (const auto& row : r.grad_pos) g->insert(g->end(), row.begin(), row.end());
          for (const auto& row : r.grad_neg) g->insert(g->end(), row.begin(), row.end());
        }
        return r.loss;
      };
      worst["contrastive"] = std::max(worst["contrastive"], grad_check(f, x, cfg.step).max_rel_error);
    }
    {
      const std::size_t t = 1 + rng.below(5), d = 2 + rng.below(4);
      RepMatrix rep;
      rep.rows = unflatten(random_vec(rng, t * d, -1.0, 1.0), 0, t, d);
      for (std::size_t i = 0; i < t; ++i) rep.entity_mask.push_back(rng.below(2) == 1);
      const PoolingSpec spec{static_cast<PoolKind>(it % 3), true};
      auto mlp = MlpParams::init(d, d, d, rng.next());
      const auto w = random_vec(rng, d, -1.0, 1.0);
      std::vector<double> x;
      for (const auto& row : rep.rows) x.insert(x.end(), row.begin(), row.end());
      const auto flat = mlp.flatten();
      x.insert(x.end(), flat.begin(), flat.end());
      const ValueAndGrad f = [&](std::span<const double> v, std::vector<double>* g) {
        RepMatrix r = rep;
        r.rows = unflatten(v, 0, t, d);
        MlpParams m = mlp;
        m.assign(v.subspan(t * d));
        const auto fwd = pool(r, spec, &m);
        double value = 0;
        for (std::size_t k = 0; k < d; ++k) value += w[k] * fwd.value[k];
        if (g) {
          const auto back = pool_backward(r, spec, &m, fwd, w);
          g->clear();
          for (const auto& row : back.rows) g->insert(g->end(), row.begin(), row.end());
          const auto gm = back.mlp->flatten();
          g->insert(g->end(), gm.begin(), gm.end());
        }
        return value;
      };
      worst["pooling_mlp"] = std::max(worst["pooling_mlp"], grad_check(f, x, cfg.step).max_rel_error);
    }
    for (const char* kernel : {"cross_entropy", "unlikelihood"}) {
      const auto x = random_vec(rng, 1 + rng.below(6), 0.05, 0.95);
      const bool ce = std::string(kernel) == "cross_entropy";
      const ValueAndGrad f = [&](std::span<const double> v, std::vector<double>* g) {
        const auto r = ce ? cross_entropy(v) : unlikelihood_loss(v);
        if (g) *g = r.grad;
        return r.value;
      };
      worst[kernel] = std::max(worst[kernel], grad_check(f, x, cfg.step).max_rel_error);
    }
  }

  double overall = 0;
  json kernels = json::object();
  for (const auto& [k, v] : worst) {
    kernels[k] = v;
    overall = std::max(overall, v);
  }
  const bool pass = overall < cfg.tolerance;
  const json report{{"instances", cfg.instances},
                    {"step", cfg.step},
                    {"tolerance", cfg.tolerance},
                    {"max_rel_error", kernels},
                    {"pass", pass}};
  ctx.write("gradcheck.json", dump_json(report));
  for (const auto& [k, v] : worst) ctx.out() << k << "\t" << v << "\n";
  ctx.out() << (pass ? "gradcheck passed" : "gradcheck FAILED") << "\n";
  return pass ? 0 : 1;
}

int cmd_tune_threshold(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto outputs = read_outputs(ctx.input("outputs", cfg.paths.outputs));
  std::optional<Corpus> corpus;
  const auto pos = optional_pos(ctx, corpus);
  TuneOptions opts;
  opts.world_knowledge_is_error = cfg.world_knowledge_is_error;
  opts.pos = &pos;
  const auto r = tune_threshold(outputs, opts);
  const json report{{"threshold", r.threshold},
                    {"precision", r.precision},
                    {"recall", r.recall},
                    {"f1", r.f1},
                    {"candidates", r.candidate_count},
                    {"outputs", r.outputs},
                    {"gold_positives", r.gold_positives},
                    {"world_knowledge_is_error", cfg.world_knowledge_is_error}};
  ctx.write("threshold.json", dump_json(report));
  ctx.out() << "threshold " << fixed(r.threshold, 4) << "  P " << fixed(r.precision, 4) << "  R "
            << fixed(r.recall, 4) << "  F1 " << fixed(r.f1, 4) << "\n";
  return 0;
}

int cmd_analyze(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  if (cfg.bins < 2) throw UsageError("analyze: --bins must be at least 2");
  const auto outputs = read_outputs(ctx.input("outputs", cfg.paths.outputs));
  std::optional<Corpus> corpus;
  const auto pos = optional_pos(ctx, corpus);
  const auto table = confidence_histogram(outputs, cfg.bins, &pos);

  std::ostringstream tsv;
  table.write_tsv(tsv);
  ctx.write("histogram.tsv", tsv.str());
  for (const auto p : {PosClass::kPropn, PosClass::kNumber, PosClass::kNoun, PosClass::kVerb}) {
    for (const auto s : {SpanPosition::kFirst, SpanPosition::kNonFirst}) {
      std::ostringstream svg;
      table.write_svg(svg, p, s);
      ctx.write("histogram_" + std::string(to_string(p)) + "_" + std::string(to_string(s)) + ".svg", svg.str());
    }
  }
  ctx.out() << "classified tokens: " << table.total() << "\n";
  return 0;
}

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<double> rouge_against_corpus(const std::vector<AnnotatedOutput>& outputs, const Corpus& corpus,
                                         std::vector<RougeL>* detail) {
  const auto docs = index_corpus(corpus);
  std::vector<double> f;
  for (const auto& o : outputs) {
    const auto it = docs.find(o.doc_id);
    if (it == docs.end()) throw Error("outputs: unknown doc '" + o.doc_id + "'");
    const auto r = rouge_l(it->second->reference.surfaces(), surfaces(o.tokens));
    if (detail) detail->push_back(r);
    f.push_back(r.f);
  }
  return f;
}

std::vector<double> metric_column(const std::string& text, const std::string& column) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  long col = -1;
  std::vector<double> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (col < 0) {
      const auto it = std::find(fields.begin(), fields.end(), column);
      if (it == fields.end()) throw ParseError(lineno, "metrics header has no column '" + column + "'");
      col = it - fields.begin();
      continue;
    }
    if (static_cast<std::size_t>(col) >= fields.size()) throw ParseError(lineno, "missing metric field");
    const auto& s = fields[static_cast<std::size_t>(col)];
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ParseError(lineno, "metric value '" + s + "' is not a finite number");
    }
    out.push_back(v);
  }
  if (col < 0) throw Error("metrics: no header row");
  return out;
}

}  // namespace

int cmd_rouge(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto corpus = load_corpus(ctx);
  const auto outputs = read_outputs(ctx.input("outputs", cfg.paths.outputs));
  std::vector<RougeL> detail;
  rouge_against_corpus(outputs, corpus, &detail);
  std::ostringstream t;
  t << "doc_id\tprecision\trecall\tf\n";
  double sp = 0, sr = 0, sf = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    t << outputs[i].doc_id << '\t' << fixed(detail[i].precision) << '\t' << fixed(detail[i].recall) << '\t'
      << fixed(detail[i].f) << '\n';
    sp += detail[i].precision;
    sr += detail[i].recall;
    sf += detail[i].f;
  }
  const double n = outputs.empty() ? 1.0 : static_cast<double>(outputs.size());
  ctx.write("rouge.tsv", t.str());
  ctx.write("rouge.json", dump_json(json{{"outputs", outputs.size()},
                                         {"mean_precision", sp / n},
                                         {"mean_recall", sr / n},
                                         {"mean_f", sf / n}}));
  ctx.out() << "ROUGE-L F (mean over " << outputs.size() << "): " << fixed(sf / n, 4) << "\n";
  return 0;
}

int cmd_correlate(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto outputs = read_outputs(ctx.input("outputs", cfg.paths.outputs));
  std::vector<double> metric;
  std::string name;
  if (ctx.has(cfg.paths.metrics)) {
    if (cfg.metric_column.empty()) throw UsageError("correlate: --metrics needs --column");
    metric = metric_column(read_file(ctx.input("metrics", cfg.paths.metrics)), cfg.metric_column);
    name = cfg.metric_column;
  } else if (ctx.has(cfg.paths.corpus)) {
    metric = rouge_against_corpus(outputs, load_corpus(ctx), nullptr);
    name = "rouge_l";
  } else {
    throw UsageError("correlate: give --metrics with --column, or --corpus for ROUGE-L");
  }
  if (metric.size() != outputs.size()) {
    throw Error("correlate: " + std::to_string(metric.size()) + " metric rows for " +
                std::to_string(outputs.size()) + " outputs");
  }
  const auto rates = error_rates(outputs);
  std::vector<double> frac, count;
  for (const auto& r : rates.per_output) {
    frac.push_back(r.fraction);
    count.push_back(static_cast<double>(r.count));
  }
  auto corr = [&](const std::vector<double>& ys) -> json {
    try {
      return pearson(metric, ys);
    } catch (const Error& e) {
      return json{{"undefined", e.what()}};
    }
  };
  const json report{{"metric", name},
                    {"outputs", outputs.size()},
                    {"mean_error_fraction", rates.mean_fraction},
                    {"mean_error_count", rates.mean_count},
                    {"pearson_error_fraction", corr(frac)},
                    {"pearson_error_count", corr(count)}};
  ctx.write("correlation.json", dump_json(report));
  ctx.out() << "pearson(" << name << ", error fraction) = " << report["pearson_error_fraction"].dump() << "\n"
            << "pearson(" << name << ", error count) = " << report["pearson_error_count"].dump() << "\n";
  return 0;
}

int cmd_stats(RunContext& ctx) {
  const auto& cfg = ctx.cfg();
  const auto corpus = load_corpus(ctx);
  std::size_t src_tokens = 0, ref_tokens = 0, entities = 0, relations = 0, quotes = 0;
  for (const auto& d : corpus) {
    src_tokens += d.source.tokens.size();
    ref_tokens += d.reference.tokens.size();
    entities += d.source.entities.size() + d.reference.entities.size();
    relations += extract_relations(d.source).size() + extract_relations(d.reference).size();
    quotes += d.source.quotes.size() + d.reference.quotes.size();
  }
  json report{{"documents", corpus.size()},
              {"source_tokens", src_tokens},
              {"reference_tokens", ref_tokens},
              {"entities", entities},
              {"relations", relations},
              {"quotes", quotes},
              {"gazetteer_entries", build_gazetteer(corpus).size()}};
  for (const auto& [role, path] : {std::pair<std::string, fs::path>{"negatives", cfg.paths.negatives},
                                   std::pair<std::string, fs::path>{"positives", cfg.paths.positives}}) {
    if (!ctx.has(path)) continue;
    const auto samples = read_samples(ctx.input(role, path));
    json by = json::object();
    for (const auto& [s, c] : count_by_strategy(samples)) by[std::string(to_string(s))] = c;
    report[role] = json{{"total", samples.size()}, {"by_strategy", by}};
  }
  ctx.write("stats.json", dump_json(report));
  for (const auto& [k, v] : report.items()) {
    if (v.is_number()) ctx.out() << k << "\t" << v.dump() << "\n";
  }
  return 0;
}

}  // namespace cliff::app
