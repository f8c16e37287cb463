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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cliff/corpus.hpp"

namespace cliff {

// One CoNLL-U sentence block with its `# key = value` comments.
struct ConlluSentence {
  std::map<std::string, std::string> meta;
  AnnotatedText text;
  std::size_t first_line = 0;
};

// Reads 10-column CoNLL-U. Named entities and NP chunks come from MISC
// (`NER=B-TYPE`, `NER=I-TYPE`, `NP=B`, `NP=I`); HEAD=0 edges are dropped.
// Multiword ranges (1-2) and empty nodes (1.1) are skipped. Throws
// ParseError with the offending line number.
std::vector<ConlluSentence> parse_conllu_sentences(std::string_view input);
std::vector<AnnotatedText> parse_conllu(std::string_view input);

// Maximal runs strictly between matching quote tokens: " ... ", “ ... ”,
// `` ... ''. Nesting is not supported; an unmatched opener is ignored.
std::vector<Span> detect_quotes(const std::vector<Token>& tokens);

// Concatenates sentences into one text, shifting every index. Quotes are
// re-detected over the joined tokens.
AnnotatedText concat_texts(const std::vector<AnnotatedText>& parts);

// Groups sentences into documents. `# newdoc id = X` opens document X and
// `# part = source|reference` selects the side; both are sticky. Throws
// Error when a document lacks either side or an id repeats.
Corpus assemble_documents(const std::vector<ConlluSentence>& sentences);

}  // namespace cliff
