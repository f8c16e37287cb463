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

#include "context.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include "cliff/error.hpp"
#include "cliff/jsonl.hpp"
#include "cliff/text.hpp"

#ifndef CLIFF_VERSION
#define CLIFF_VERSION "0.0.0"
#endif

namespace cliff::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<Strategy> parse_strategy_list(const std::string& spec) {
  if (trim(spec) == "all") return all_negative_strategies();
  std::vector<Strategy> out;
  for (const auto& raw : split(spec, ',')) {
    const auto name = std::string(trim(raw));
    if (name.empty()) continue;
    const auto s = parse_strategy(name);
    if (!s || *s == Strategy::kReference || *s == Strategy::kBacktranslate) {
      throw UsageError("--strategy: '" + name + "' is not a negative construction strategy");
    }
    if (std::find(out.begin(), out.end(), *s) != out.end()) {
      throw UsageError("--strategy: '" + name + "' listed twice");
    }
    out.push_back(*s);
  }
  if (out.empty()) throw UsageError("--strategy: empty list");
  return out;
}

PoolingSpec parse_pooling(const RunConfig& cfg) {
  PoolingSpec spec;
  spec.use_mlp = cfg.mlp;
  if (cfg.pooling == "all") {
    spec.kind = PoolKind::kAllTokens;
  } else if (cfg.pooling == "entity") {
    spec.kind = PoolKind::kEntityTokens;
  } else if (cfg.pooling == "last") {
    spec.kind = PoolKind::kLastToken;
  } else {
    throw UsageError("--pooling: expected all, entity or last, got '" + cfg.pooling + "'");
  }
  return spec;
}

LossMode parse_mode(const std::string& mode) {
  if (mode == "cliff") return LossMode::kCliff;
  if (mode == "unlikelihood") return LossMode::kUnlikelihood;
  throw UsageError("--mode: expected cliff or unlikelihood, got '" + mode + "'");
}

json config_json(const RunConfig& cfg) {
  json strategies = json::array();
  for (const auto s : parse_strategy_list(cfg.strategies)) strategies.push_back(std::string(to_string(s)));
  return json{
      {"seed", cfg.seed},
      {"strategies", strategies},
      {"nucleus_p", cfg.strategy.nucleus_p},
      {"samples_per_anchor", cfg.strategy.samples_per_anchor},
      {"fill_len_max", cfg.strategy.fill_len_max},
      {"max_negatives_per_doc", cfg.strategy.max_negatives_per_doc},
      {"negatives_per_batch", cfg.strategy.negatives_per_batch},
      {"threshold", cfg.strategy.threshold},
      {"regen_extra_len", cfg.strategy.regen_extra_len},
      {"max_beams", cfg.max_beams},
      {"max_substitutions", cfg.max_substitutions},
      {"lm_order", cfg.lm_order},
      {"lm_smoothing", cfg.lm_smoothing},
      {"dim", cfg.dim},
      {"tau", cfg.loss.tau},
      {"lambda", cfg.loss.lambda},
      {"ordered_pairs", cfg.ordered_pairs},
      {"mode", cfg.mode},
      {"pooling", cfg.pooling},
      {"mlp", cfg.mlp},
      {"instances", cfg.instances},
      {"step", cfg.step},
      {"tolerance", cfg.tolerance},
      {"world_knowledge_is_error", cfg.world_knowledge_is_error},
      {"bins", cfg.bins},
      {"metric_column", cfg.metric_column},
  };
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunContext::RunContext(const RunConfig& cfg, std::string subcommand, std::ostream& out)
    : cfg_(cfg), subcommand_(std::move(subcommand)), out_(out) {}

const fs::path& RunContext::input(const std::string& role, const fs::path& path) {
  if (path.empty()) throw UsageError(subcommand_ + ": --" + role + " is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw UsageError(subcommand_ + ": --" + role + " '" + path.string() + "' does not exist");
  }
  const auto bytes = read_file(path);
  inputs_[role] = json{{"bytes", bytes.size()}, {"fnv1a64", hex64(fnv1a64(bytes))}};
  return path;
}

fs::path RunContext::write(const std::string& name, const std::string& bytes) {
  fs::create_directories(cfg_.paths.out_dir);
  const auto path = cfg_.paths.out_dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << bytes;
  f.close();
  if (!f) throw Error("failed writing '" + path.string() + "'");
  artifacts_[name] = json{{"bytes", bytes.size()},
                          {"fnv1a64", hex64(fnv1a64(bytes))},
                          {"lines", std::count(bytes.begin(), bytes.end(), '\n')}};
  return path;
}

void RunContext::self_check() const {
  for (const auto& [name, meta] : artifacts_) {
    const auto path = cfg_.paths.out_dir / name;
    const fs::path p(name);
    try {
      if (p.extension() == ".jsonl") {
        const auto stem = p.stem().string();
        if (stem == "corpus") {
          for (const auto& doc : read_corpus(path)) {
            const auto problems = validate_document(doc);
            if (!problems.empty()) throw Error("doc '" + doc.id + "': " + problems.front());
          }
        } else if (stem == "negatives" || stem == "positives") {
          read_samples(path);
        } else if (stem == "batches") {
          read_batches(path);
        } else {
          throw Error("no schema registered");
        }
      } else if (p.extension() == ".json") {
        if (!json::accept(read_file(path))) throw Error("not valid JSON");
      }
    } catch (const std::exception& e) {
      throw Error("self-check of '" + name + "' failed: " + e.what());
    }
  }
}

void RunContext::write_manifest() const {
  fs::create_directories(cfg_.paths.out_dir);
  const auto path = cfg_.paths.out_dir / "manifest.json";
  json manifest = json::object();
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) {
    manifest = json::parse(read_file(path), nullptr, false);
    if (!manifest.is_object()) manifest = json::object();
  }
  const auto config = config_json(cfg_);
  json artifacts = json::object();
  for (const auto& [name, meta] : artifacts_) artifacts[name] = meta;
  manifest["tool"] = "cliff";
  manifest["version"] = CLIFF_VERSION;
  manifest["runs"][subcommand_] = json{{"config", config},
                                       {"config_hash", hex64(fnv1a64(config.dump()))},
                                       {"inputs", inputs_},
                                       {"artifacts", artifacts}};
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << manifest.dump(2) << '\n';
}

Corpus load_corpus(RunContext& ctx) {
  auto corpus = read_corpus(ctx.input("corpus", ctx.cfg().paths.corpus));
  std::sort(corpus.begin(), corpus.end(), [](const Document& a, const Document& b) { return a.id < b.id; });
  for (const auto& doc : corpus) {
    const auto problems = validate_document(doc);
    if (!problems.empty()) throw Error("doc '" + doc.id + "': " + problems.front());
  }
  return corpus;
}

}  // namespace cliff::app
