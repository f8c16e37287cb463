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

#include "app.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cliff/error.hpp"
#include "context.hpp"

#ifndef CLIFF_VERSION
#define CLIFF_VERSION "0.0.0"
#endif

namespace cliff::app {

namespace {

std::string env_name(const std::string& flag) {
  std::string out = "CLIFF_";
  for (char c : flag) {
    if (c == '-') {
      if (out.back() != '_') out += '_';
    } else {
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

// Adds --name with a CLIFF_NAME environment fallback.
template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& var, const std::string& help) {
  return app->add_option("--" + name, var, help)->envname(env_name(name))->capture_default_str();
}

CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
  return app->add_flag("--" + name, var, help)->envname(env_name(name));
}

struct Command {
  CLI::App* app;
  int (*fn)(RunContext&);
};

void add_lm(CLI::App* sub, RunConfig& c) {
  opt(sub, "order", c.lm_order, "n-gram order of the bundled language model");
  opt(sub, "smoothing", c.lm_smoothing, "add-k smoothing constant");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Contrastive sample construction, loss kernels and confidence analysis", "cliff"};
  app.set_version_flag("--version", CLIFF_VERSION);
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  app.fallthrough();
  opt(&app, "seed", c.seed, "global 64-bit seed");
  opt(&app, "workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  opt(&app, "out-dir", c.paths.out_dir, "directory for artifacts and manifest.json");

  std::vector<Command> commands;
  auto sub = [&](const std::string& name, const std::string& help, int (*fn)(RunContext&)) {
    CLI::App* s = app.add_subcommand(name, help);
    commands.push_back({s, fn});
    return s;
  };

  auto* ingest = sub("ingest", "CoNLL-U to corpus JSONL, gazetteer and n-gram dumps", cmd_ingest);
  opt(ingest, "conllu", c.paths.conllu, "annotated CoNLL-U input")->required();
  add_lm(ingest, c);

  auto* construct = sub("construct", "build negative samples", cmd_construct);
  opt(construct, "corpus", c.paths.corpus, "corpus JSONL")->required();
  opt(construct, "strategy", c.strategies,
      "comma-separated strategies (swap-ent, mask-ent, mask-rel, regen-ent, regen-rel, sys-lowcon) or all");
  opt(construct, "beams", c.paths.beams, "beam JSONL (sys-lowcon)");
  opt(construct, "max-beams", c.max_beams, "reject beam sets larger than this (0 = no limit)");
  opt(construct, "synonyms", c.paths.synonyms, "synonym groups TSV");
  opt(construct, "nucleus-p", c.strategy.nucleus_p, "nucleus sampling mass");
  opt(construct, "samples-per-anchor", c.strategy.samples_per_anchor, "continuations per regeneration prompt");
  opt(construct, "fill-len-max", c.strategy.fill_len_max, "longest masked-span fill");
  opt(construct, "regen-extra-len", c.strategy.regen_extra_len, "continuation budget beyond reference length");
  opt(construct, "max-negatives", c.strategy.max_negatives_per_doc, "cap per document (0 = none)");
  opt(construct, "threshold", c.strategy.threshold, "low-confidence threshold for sys-lowcon");
  add_lm(construct, c);

  auto* positive = sub("positive", "reference plus filtered paraphrases", cmd_positive);
  opt(positive, "corpus", c.paths.corpus, "corpus JSONL")->required();
  opt(positive, "synonyms", c.paths.synonyms, "synonym groups TSV");
  opt(positive, "max-substitutions", c.max_substitutions, "paraphraser substitutions per reference");

  auto* batch = sub("batch", "assemble training batches with features", cmd_batch);
  opt(batch, "corpus", c.paths.corpus, "corpus JSONL")->required();
  opt(batch, "negatives", c.paths.negatives, "negative samples JSONL")->required();
  opt(batch, "positives", c.paths.positives, "positive samples JSONL (default: references)");
  opt(batch, "negatives-per-batch", c.strategy.negatives_per_batch, "negatives drawn per batch");
  opt(batch, "dim", c.dim, "width of hashed token representations");
  add_lm(batch, c);

  auto* loss = sub("loss", "evaluate training objectives on batches", cmd_loss);
  opt(loss, "batches", c.paths.batches, "batches JSONL")->required();
  opt(loss, "mode", c.mode, "cliff or unlikelihood")->check(CLI::IsMember({"cliff", "unlikelihood"}));
  opt(loss, "tau", c.loss.tau, "temperature");
  opt(loss, "lambda", c.loss.lambda, "contrastive weight");
  opt(loss, "pooling", c.pooling, "all, entity or last")->check(CLI::IsMember({"all", "entity", "last"}));
  flag(loss, "mlp", c.mlp, "project pooled vectors through a two-layer MLP");
  flag(loss, "ordered-pairs", c.ordered_pairs, "normalize by ordered pair count instead of C(|P|,2)");

  auto* gradcheck = sub("gradcheck", "finite-difference check of every kernel", cmd_gradcheck);
  opt(gradcheck, "instances", c.instances, "random instances per kernel");
  opt(gradcheck, "step", c.step, "central difference step");
  opt(gradcheck, "tolerance", c.tolerance, "maximum accepted relative error");
  opt(gradcheck, "tau", c.loss.tau, "temperature");
  flag(gradcheck, "ordered-pairs", c.ordered_pairs, "check the ordered-pair normalization");

  auto* tune = sub("tune-threshold", "F1-optimal low-confidence threshold", cmd_tune_threshold);
  opt(tune, "outputs", c.paths.outputs, "annotated outputs JSONL")->required();
  opt(tune, "corpus", c.paths.corpus, "corpus JSONL used to tag untagged tokens");
  flag(tune, "world-knowledge-is-error", c.world_knowledge_is_error, "count world-knowledge spans as errors");

  auto* analyze = sub("analyze", "first-token confidence histograms", cmd_analyze);
  opt(analyze, "outputs", c.paths.outputs, "annotated outputs JSONL")->required();
  opt(analyze, "corpus", c.paths.corpus, "corpus JSONL used to tag untagged tokens");
  opt(analyze, "bins", c.bins, "uniform bins over [0,1]");

  auto* rouge = sub("rouge", "ROUGE-L of outputs against references", cmd_rouge);
  opt(rouge, "corpus", c.paths.corpus, "corpus JSONL")->required();
  opt(rouge, "outputs", c.paths.outputs, "outputs JSONL")->required();

  auto* correlate = sub("correlate", "Pearson correlation of a metric with error rates", cmd_correlate);
  opt(correlate, "outputs", c.paths.outputs, "annotated outputs JSONL")->required();
  opt(correlate, "metrics", c.paths.metrics, "TSV with a header row, one row per output");
  opt(correlate, "column", c.metric_column, "metric column in --metrics");
  opt(correlate, "corpus", c.paths.corpus, "use ROUGE-L against references as the metric");

  auto* stats = sub("stats", "corpus and sample counts", cmd_stats);
  opt(stats, "corpus", c.paths.corpus, "corpus JSONL")->required();
  opt(stats, "negatives", c.paths.negatives, "negative samples JSONL");
  opt(stats, "positives", c.paths.positives, "positive samples JSONL");

  // CLI11 wants argv-style input in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* failed = &app;
    for (const auto& cmd : commands) {
      if (cmd.app->parsed()) failed = cmd.app;
    }
    err << "error: " << e.what() << "\n\n" << failed->help();
    return kExitUsageError;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      RunContext ctx(c, cmd.app->get_name(), out);
      (void)config_json(c);  // rejects a bad --strategy before any work
      const int status = cmd.fn(ctx);
      ctx.self_check();
      ctx.write_manifest();
      return status;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n\n" << cmd.app->help();
      return kExitUsageError;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitDataError;
    }
  }
  return kExitUsageError;
}

}  // namespace cliff::app
