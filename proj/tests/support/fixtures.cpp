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

#include "fixtures.hpp"

#include "cliff/conllu.hpp"
#include "cliff/error.hpp"
#include "cliff/jsonl.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#ifndef CLIFF_TEST_DATA_DIR
#error "CLIFF_TEST_DATA_DIR must point at the data/ directory"
#endif

namespace cliff::testing {

std::string row(std::size_t id, const std::string& form, const std::string& upos, std::size_t head,
                const std::string& rel, const std::string& misc) {
  std::ostringstream o;
  o << id << '\t' << form << '\t' << form << '\t' << upos << "\t_\t_\t" << head << '\t' << rel << "\t_\t"
    << (misc.empty() ? "_" : misc) << '\n';
  return o.str();
}

AnnotatedText parse_one(const std::string& conllu) {
  auto texts = parse_conllu(conllu);
  if (texts.size() != 1) throw Error("fixture: expected one sentence");
  return texts.front();
}

AnnotatedText plain_text(const std::vector<std::string>& surfaces, const std::vector<std::string>& upos) {
  AnnotatedText t;
  t.tokens = make_tokens(surfaces, upos);
  return t;
}

namespace {

const char* kOwlSource =
    "1\tThe\tthe\tDET\t_\t_\t3\tdet\t_\tNP=B\n"
    "2\trare\trare\tADJ\t_\t_\t3\tamod\t_\tNP=I\n"
    "3\towl\towl\tNOUN\t_\t_\t5\tnsubj:pass\t_\tNP=I\n"
    "4\twas\tbe\tAUX\t_\t_\t5\taux:pass\t_\t_\n"
    "5\tfound\tfind\tVERB\t_\t_\t0\troot\t_\t_\n"
    "6\tin\tin\tADP\t_\t_\t7\tcase\t_\tNP=B\n"
    "7\tBettisfield\tBettisfield\tPROPN\t_\t_\t5\tobl\t_\tNER=B-GPE|NP=I\n"
    "8\tnear\tnear\tADP\t_\t_\t9\tcase\t_\tNP=B\n"
    "9\tFlintshire\tFlintshire\tPROPN\t_\t_\t7\tnmod\t_\tNER=B-GPE|NP=I\n"
    "10\tby\tby\tADP\t_\t_\t12\tcase\t_\tNP=B\n"
    "11\tthe\tthe\tDET\t_\t_\t12\tdet\t_\tNP=I\n"
    "12\tRSPCA\tRSPCA\tPROPN\t_\t_\t5\tobl:agent\t_\tNER=B-ORG|NP=I\n"
    "13\t.\t.\tPUNCT\t_\t_\t5\tpunct\t_\t_\n";

const char* kOwlReference =
    "1\tA\ta\tDET\t_\t_\t6\tdet\t_\tNP=B\n"
    "2\t``\t``\tPUNCT\t_\t_\t3\tpunct\t_\tNP=I\n"
    "3\trare\trare\tADJ\t_\t_\t6\tamod\t_\tNP=I\n"
    "4\t''\t''\tPUNCT\t_\t_\t3\tpunct\t_\tNP=I\n"
    "5\tshort-eared\tshort-eared\tADJ\t_\t_\t6\tamod\t_\tNP=I\n"
    "6\towl\towl\tNOUN\t_\t_\t13\tnsubj\t_\tNP=I\n"
    "7\tfound\tfind\tVERB\t_\t_\t6\tacl\t_\t_\n"
    "8\temaciated\temaciated\tADJ\t_\t_\t7\txcomp\t_\t_\n"
    "9\tin\tin\tADP\t_\t_\t10\tcase\t_\tNP=B\n"
    "10\tFlintshire\tFlintshire\tPROPN\t_\t_\t7\tobl\t_\tNER=B-GPE|NP=I\n"
    "11\tis\tbe\tAUX\t_\t_\t13\taux\t_\t_\n"
    "12\tnow\tnow\tADV\t_\t_\t13\tadvmod\t_\t_\n"
    "13\trecuperating\trecuperate\tVERB\t_\t_\t0\troot\t_\t_\n"
    "14\twell\twell\tADV\t_\t_\t13\tadvmod\t_\t_\n"
    "15\t,\t,\tPUNCT\t_\t_\t19\tpunct\t_\t_\n"
    "16\tthe\tthe\tDET\t_\t_\t17\tdet\t_\tNP=B\n"
    "17\tRSPCA\tRSPCA\tPROPN\t_\t_\t19\tnsubj\t_\tNER=B-ORG|NP=I\n"
    "18\thave\thave\tAUX\t_\t_\t19\taux\t_\t_\n"
    "19\tsaid\tsay\tVERB\t_\t_\t13\tparataxis\t_\t_\n"
    "20\t.\t.\tPUNCT\t_\t_\t13\tpunct\t_\t_\n";

}  // namespace

Document owl_document() {
  return Document{"owl", parse_one(kOwlSource), parse_one(kOwlReference)};
}

Document other_document() {
  const std::string src = row(1, "Police", "NOUN", 2, "nsubj") + row(2, "searched", "VERB", 0, "root") +
                          row(3, "South", "PROPN", 4, "compound", "NER=B-GPE|NP=B") +
                          row(4, "Yorkshire", "PROPN", 2, "obj", "NER=I-GPE|NP=I") +
                          row(5, "and", "CCONJ", 6, "cc") + row(6, "London", "PROPN", 4, "conj", "NER=B-GPE|NP=B") +
                          row(7, ".", "PUNCT", 2, "punct");
  const std::string ref = row(1, "Police", "NOUN", 2, "nsubj") + row(2, "searched", "VERB", 0, "root") +
                          row(3, "London", "PROPN", 2, "obj", "NER=B-GPE|NP=B") + row(4, ".", "PUNCT", 2, "punct");
  return Document{"other", parse_one(src), parse_one(ref)};
}

std::filesystem::path data_dir() { return std::filesystem::path(CLIFF_TEST_DATA_DIR) / "synthetic"; }

Corpus synthetic_corpus() {
  std::ifstream in(data_dir() / "corpus.conllu", std::ios::binary);
  if (!in) throw Error("fixture: synthetic corpus missing");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return assemble_documents(parse_conllu_sentences(text));
}

std::vector<GenerationStep> ScriptedGenerator::next() const {
  const auto& words = script_[calls_++ % script_.size()];
  std::vector<GenerationStep> out;
  for (const auto& w : words) out.push_back(GenerationStep{w, 1.0, 1.0});
  return out;
}

std::vector<GenerationStep> ScriptedGenerator::fill(std::span<const std::string>, std::span<const std::string>,
                                                    RngState&) const {
  return next();
}

std::vector<GenerationStep> ScriptedGenerator::continue_from(std::span<const std::string>, std::size_t,
                                                             RngState&) const {
  return next();
}

}  // namespace cliff::testing
