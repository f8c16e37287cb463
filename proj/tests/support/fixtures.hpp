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
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "cliff/corpus.hpp"
#include "cliff/genkit.hpp"

namespace cliff::testing {

// One CoNLL-U token line; misc "_" when empty.
std::string row(std::size_t id, const std::string& form, const std::string& upos, std::size_t head,
                const std::string& rel, const std::string& misc = "_");

// Parses exactly one sentence.
AnnotatedText parse_one(const std::string& conllu);

// A text with the given surfaces and tags, no edges or entities.
AnnotatedText plain_text(const std::vector<std::string>& surfaces, const std::vector<std::string>& upos = {});

// The rescued-owl example: source mentions Bettisfield, Flintshire and the
// RSPCA; the reference is "A `` rare '' short-eared owl found emaciated in
// Flintshire is now recuperating well , the RSPCA have said ."
Document owl_document();

// A second document whose source and reference mention South Yorkshire and
// London, so a gazetteer built over both documents knows those names.
Document other_document();

std::filesystem::path data_dir();
Corpus synthetic_corpus();

// Replays fixed fills / continuations in call order, cycling when exhausted.
class ScriptedGenerator final : public Generator {
 public:
  explicit ScriptedGenerator(std::vector<std::vector<std::string>> script) : script_(std::move(script)) {}

  std::vector<GenerationStep> fill(std::span<const std::string> left, std::span<const std::string> right,
                                   RngState& rng) const override;
  std::vector<GenerationStep> continue_from(std::span<const std::string> prompt, std::size_t max_len,
                                            RngState& rng) const override;

  std::size_t calls() const { return calls_; }

 private:
  std::vector<GenerationStep> next() const;

  std::vector<std::vector<std::string>> script_;
  mutable std::size_t calls_ = 0;
};

// Returns fixed tokens regardless of input.
class FixedParaphraser final : public Paraphraser {
 public:
  explicit FixedParaphraser(std::vector<std::string> out) : out_(std::move(out)) {}
  std::vector<std::string> paraphrase(std::span<const std::string>) const override { return out_; }

 private:
  std::vector<std::string> out_;
};

class IdentityParaphraser final : public Paraphraser {
 public:
  std::vector<std::string> paraphrase(std::span<const std::string> tokens) const override {
    return {tokens.begin(), tokens.end()};
  }
};

}  // namespace cliff::testing
