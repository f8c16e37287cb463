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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliff/confcal.hpp"
#include "cliff/corpus.hpp"
#include "cliff/objectives.hpp"
#include "cliff/strategies.hpp"

namespace cliff::app {

// Bad flags, unknown names, missing inputs: exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Paths {
  std::filesystem::path conllu;
  std::filesystem::path corpus;
  std::filesystem::path beams;
  std::filesystem::path outputs;
  std::filesystem::path synonyms;
  std::filesystem::path negatives;
  std::filesystem::path positives;
  std::filesystem::path batches;
  std::filesystem::path metrics;
  std::filesystem::path out_dir = "cliff-out";
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  Paths paths;

  std::string strategies = "all";
  StrategyConfig strategy;
  std::size_t max_beams = 0;
  std::size_t max_substitutions = 2;
  std::size_t lm_order = 3;
  double lm_smoothing = 0.1;
  std::size_t dim = 16;

  LossConfig loss;
  std::string mode = "cliff";
  std::string pooling = "all";
  bool mlp = false;
  bool ordered_pairs = false;

  std::size_t instances = 100;
  double step = 1e-5;
  double tolerance = 1e-5;

  bool world_knowledge_is_error = false;
  std::size_t bins = 10;
  std::string metric_column;
};

// Parsed --strategy value; throws UsageError.
std::vector<Strategy> parse_strategy_list(const std::string& spec);
PoolingSpec parse_pooling(const RunConfig& cfg);
LossMode parse_mode(const std::string& mode);

// Everything that influences artifact bytes, without paths or parallelism.
nlohmann::json config_json(const RunConfig& cfg);

std::string hex64(std::uint64_t v);

// Collects input fingerprints and emitted artifacts for one subcommand run
// and writes them into <out-dir>/manifest.json.
class RunContext {
 public:
  RunContext(const RunConfig& cfg, std::string subcommand, std::ostream& out);

  const RunConfig& cfg() const { return cfg_; }
  std::ostream& out() { return out_; }

  // Checks that the path is set and exists, records its fingerprint under
  // `role`, and returns it.
  const std::filesystem::path& input(const std::string& role, const std::filesystem::path& path);
  bool has(const std::filesystem::path& path) const { return !path.empty(); }

  // Writes an artifact under the output directory and records it.
  std::filesystem::path write(const std::string& name, const std::string& bytes);

  // Re-reads every JSONL artifact written so far with its schema reader.
  void self_check() const;

  void write_manifest() const;

 private:
  const RunConfig& cfg_;
  std::string subcommand_;
  std::ostream& out_;
  nlohmann::json inputs_ = nlohmann::json::object();
  std::map<std::string, nlohmann::json> artifacts_;
};

std::string read_file(const std::filesystem::path& path);

// Sorted by document id and validated.
Corpus load_corpus(RunContext& ctx);

std::string fixed(double v, int digits = 6);

int cmd_ingest(RunContext& ctx);
int cmd_construct(RunContext& ctx);
int cmd_positive(RunContext& ctx);
int cmd_batch(RunContext& ctx);
int cmd_loss(RunContext& ctx);
int cmd_gradcheck(RunContext& ctx);
int cmd_tune_threshold(RunContext& ctx);
int cmd_analyze(RunContext& ctx);
int cmd_rouge(RunContext& ctx);
int cmd_correlate(RunContext& ctx);
int cmd_stats(RunContext& ctx);

}  // namespace cliff::app
