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

#include "cliff/conllu.hpp"

#include <charconv>
#include <optional>
#include <set>

#include "cliff/error.hpp"
#include "cliff/text.hpp"

namespace cliff {
namespace {

std::optional<long> parse_int(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

struct BioTag {
  char bio = 'O';  // B, I or O
  std::string type;
};

BioTag misc_tag(std::string_view misc, std::string_view key) {
  if (misc == "_") return {};
  for (const auto& item : split(misc, '|')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || std::string_view(item).substr(0, eq) != key) continue;
    std::string_view v = std::string_view(item).substr(eq + 1);
    if (v.empty() || v == "O") return {};
    BioTag t;
    t.bio = v[0];
    if (t.bio != 'B' && t.bio != 'I') return {};
    if (v.size() > 2 && v[1] == '-') t.type = std::string(v.substr(2));
    return t;
  }
  return {};
}

struct Pending {
  AnnotatedText text;
  std::vector<BioTag> ner;
  std::vector<BioTag> np;
  std::vector<std::pair<long, std::size_t>> heads;  // (head, line)
  std::vector<std::string> rels;
  std::map<std::string, std::string> meta;
  std::size_t first_line = 0;

  bool empty() const { return text.tokens.empty(); }
};

// B/I runs; an I whose predecessor is outside a run (or of another type)
// opens a new run.
template <typename Emit>
void bio_runs(const std::vector<BioTag>& tags, Emit emit) {
  std::size_t i = 0;
  while (i < tags.size()) {
    if (tags[i].bio == 'O') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j].bio == 'I' && tags[j].type == tags[i].type) ++j;
    emit(Span{i, j}, tags[i].type);
    i = j;
  }
}

ConlluSentence finish(Pending& p) {
  const std::size_t n = p.text.tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto [head, line] = p.heads[i];
    if (head < 0 || static_cast<std::size_t>(head) > n) {
      throw ParseError(line, "HEAD " + std::to_string(head) + " out of range");
    }
    if (head == 0) continue;
    const auto gov = static_cast<std::size_t>(head - 1);
    if (gov == i) throw ParseError(line, "token is its own HEAD");
    p.text.deps.push_back(DepEdge{gov, p.rels[i], i});
  }
  bio_runs(p.ner, [&](Span s, const std::string& type) {
    p.text.entities.push_back(
        EntityMention{s, type.empty() ? std::string("MISC") : type, normalize(p.text.surfaces(s))});
  });
  bio_runs(p.np, [&](Span s, const std::string&) { p.text.np_chunks.push_back(s); });
  p.text.quotes = detect_quotes(p.text.tokens);

  ConlluSentence out{std::move(p.meta), std::move(p.text), p.first_line};
  p = Pending{};
  return out;
}

}  // namespace

std::vector<ConlluSentence> parse_conllu_sentences(std::string_view input) {
  std::vector<ConlluSentence> out;
  Pending cur;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    auto nl = input.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    std::string_view line = input.substr(pos, last ? std::string_view::npos : nl - pos);
    pos = last ? input.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty()) {
      if (!cur.empty()) out.push_back(finish(cur));
      else cur.meta.clear();
      continue;
    }
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        cur.meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
      } else {
        cur.meta[std::string(body)] = "";
      }
      continue;
    }

    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos) continue;
    const auto id = parse_int(cols[0]);
    if (!id) throw ParseError(line_no, "non-integer ID '" + cols[0] + "'");
    if (*id != static_cast<long>(cur.text.tokens.size()) + 1) {
      throw ParseError(line_no, "ID " + cols[0] + " out of sequence");
    }
    if (cols[1].empty()) throw ParseError(line_no, "empty FORM");
    const auto head = parse_int(cols[6]);
    if (!head) throw ParseError(line_no, "non-integer HEAD '" + cols[6] + "'");

    if (cur.empty()) cur.first_line = line_no;
    const std::string upos = cols[3] == "_" ? std::string() : cols[3];
    cur.text.tokens.push_back(Token{cols[1], upos, cur.text.tokens.size()});
    cur.heads.emplace_back(*head, line_no);
    cur.rels.push_back(cols[7] == "_" ? std::string("dep") : cols[7]);
    cur.ner.push_back(misc_tag(cols[9], "NER"));
    cur.np.push_back(misc_tag(cols[9], "NP"));
  }
  if (!cur.empty()) out.push_back(finish(cur));
  return out;
}

std::vector<AnnotatedText> parse_conllu(std::string_view input) {
  std::vector<AnnotatedText> out;
  for (auto& s : parse_conllu_sentences(input)) out.push_back(std::move(s.text));
  return out;
}

std::vector<Span> detect_quotes(const std::vector<Token>& tokens) {
  auto closer_for = [](std::string_view s) -> std::optional<std::string_view> {
    if (s == "\"") return "\"";
    if (s == "“") return "”";
    if (s == "``") return "''";
    return std::nullopt;
  };
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto closer = closer_for(tokens[i].surface);
    if (!closer) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && tokens[j].surface != *closer) ++j;
    if (j == tokens.size()) {
      ++i;
      continue;
    }
    if (j > i + 1) out.push_back(Span{i + 1, j});
    i = j + 1;
  }
  return out;
}

AnnotatedText concat_texts(const std::vector<AnnotatedText>& parts) {
  AnnotatedText out;
  for (const auto& p : parts) {
    const std::size_t off = out.tokens.size();
    for (const auto& t : p.tokens) out.tokens.push_back(Token{t.surface, t.upos, t.index + off});
    for (const auto& e : p.entities) {
      out.entities.push_back(EntityMention{Span{e.span.start + off, e.span.end + off}, e.etype, e.surface});
    }
    for (const auto& d : p.deps) out.deps.push_back(DepEdge{d.gov + off, d.rel, d.dep + off});
    for (const auto& c : p.np_chunks) out.np_chunks.push_back(Span{c.start + off, c.end + off});
  }
  out.quotes = detect_quotes(out.tokens);
  return out;
}

Corpus assemble_documents(const std::vector<ConlluSentence>& sentences) {
  struct Parts {
    std::vector<AnnotatedText> source;
    std::vector<AnnotatedText> reference;
  };
  std::vector<std::pair<std::string, Parts>> docs;
  std::set<std::string> seen;
  std::string part = "source";
  for (const auto& s : sentences) {
    if (auto it = s.meta.find("newdoc id"); it != s.meta.end()) {
      if (!seen.insert(it->second).second) {
        throw ParseError(s.first_line, "duplicate document id '" + it->second + "'");
      }
      docs.emplace_back(it->second, Parts{});
      part = "source";
    }
    if (auto it = s.meta.find("part"); it != s.meta.end()) part = to_lower(it->second);
    if (docs.empty()) throw ParseError(s.first_line, "sentence before any '# newdoc id = ...'");
    if (part == "source") docs.back().second.source.push_back(s.text);
    else if (part == "reference") docs.back().second.reference.push_back(s.text);
    else throw ParseError(s.first_line, "unknown part '" + part + "'");
  }
  Corpus corpus;
  for (auto& [id, parts] : docs) {
    if (parts.source.empty() || parts.reference.empty()) {
      throw Error("document '" + id + "' lacks a " +
                  std::string(parts.source.empty() ? "source" : "reference"));
    }
    corpus.push_back(Document{id, concat_texts(parts.source), concat_texts(parts.reference)});
  }
  return corpus;
}

}  // namespace cliff
