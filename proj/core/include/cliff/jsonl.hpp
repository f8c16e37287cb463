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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cliff/batch.hpp"
#include "cliff/corpus.hpp"

namespace cliff {

// JSONL readers and writers. Every file is one JSON object per line, keys in
// snake_case, newline-terminated. Readers throw Error naming the document id
// (when known), the field and the line.

nlohmann::json to_json(const Token& t);
nlohmann::json to_json(const AnnotatedText& t);
nlohmann::json to_json(const Document& d);
nlohmann::json to_json(const BeamSet& b);
nlohmann::json to_json(const AnnotatedOutput& o);
nlohmann::json to_json(const CandidateSample& s);
nlohmann::json to_json(const TrainingBatch& b);

Document document_from_json(const nlohmann::json& j);
BeamSet beamset_from_json(const nlohmann::json& j);
AnnotatedOutput output_from_json(const nlohmann::json& j);
CandidateSample sample_from_json(const nlohmann::json& j);
TrainingBatch batch_from_json(const nlohmann::json& j);

// Rejects duplicate ids. An empty stream is an empty corpus.
Corpus read_corpus(std::istream& in);
Corpus read_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const Corpus& corpus);
void write_corpus(const std::filesystem::path& path, const Corpus& corpus);

// `max_beams` = 0 disables the beam-count check.
std::vector<BeamSet> read_beams(std::istream& in, std::size_t max_beams = 0);
std::vector<BeamSet> read_beams(const std::filesystem::path& path, std::size_t max_beams = 0);
void write_beams(std::ostream& out, const std::vector<BeamSet>& beams);

std::vector<AnnotatedOutput> read_outputs(std::istream& in);
std::vector<AnnotatedOutput> read_outputs(const std::filesystem::path& path);
void write_outputs(std::ostream& out, const std::vector<AnnotatedOutput>& outputs);

std::vector<CandidateSample> read_samples(std::istream& in);
std::vector<CandidateSample> read_samples(const std::filesystem::path& path);
void write_samples(std::ostream& out, const std::vector<CandidateSample>& samples);

std::vector<TrainingBatch> read_batches(std::istream& in);
std::vector<TrainingBatch> read_batches(const std::filesystem::path& path);
void write_batches(std::ostream& out, const std::vector<TrainingBatch>& batches);

}  // namespace cliff
