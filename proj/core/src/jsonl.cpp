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

#include "cliff/jsonl.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cliff/error.hpp"

namespace cliff {

using nlohmann::json;

namespace {

// Field access with error messages of the form
// "doc 'd1': field 'reference.tokens[2].surface': expected string".
class Field {
 public:
  Field(const json& j, std::string doc, std::string path)
      : j_(j), doc_(std::move(doc)), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::string msg;
    if (!doc_.empty()) msg += "doc '" + doc_ + "': ";
    msg += "field '" + (path_.empty() ? std::string("<root>") : path_) + "': " + what;
    throw Error(msg);
  }

  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }

  Field at(const std::string& key) const {
    if (!j_.is_object()) fail("expected object");
    if (!j_.contains(key)) Field(j_, doc_, join(key)).fail("missing");
    return Field(j_.at(key), doc_, join(key));
  }

  Field operator[](std::size_t i) const {
    return Field(j_.at(i), doc_, path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected array");
    return j_.size();
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected string");
    return j_.get<std::string>();
  }

  double num() const {
    if (!j_.is_number()) fail("expected number");
    return j_.get<double>();
  }

  std::size_t index() const {
    if (!j_.is_number_integer() && !j_.is_number_unsigned()) fail("expected non-negative integer");
    const auto v = j_.get<long long>();
    if (v < 0) fail("expected non-negative integer");
    return static_cast<std::size_t>(v);
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected boolean");
    return j_.get<bool>();
  }

  const json& raw() const { return j_; }
  const std::string& doc() const { return doc_; }

 private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string doc_;
  std::string path_;
};

json span_json(const Span& s) { return json{{"start", s.start}, {"end", s.end}}; }

Span read_span(const Field& f) {
  Span s{f.at("start").index(), f.at("end").index()};
  if (s.start >= s.end) f.fail("empty or inverted span");
  return s;
}

void check_span(const Field& f, const Span& s, std::size_t n) {
  if (s.end > n) f.fail("span [" + std::to_string(s.start) + "," + std::to_string(s.end) +
                        ") out of range for " + std::to_string(n) + " tokens");
}

Token read_token(const Field& f, std::size_t index) {
  if (f.raw().is_string()) {
    auto s = f.str();
    if (s.empty()) f.fail("empty surface");
    return Token{s, "", index};
  }
  Token t{f.at("surface").str(), f.has("upos") ? f.at("upos").str() : std::string(), index};
  if (t.surface.empty()) f.at("surface").fail("empty surface");
  return t;
}

std::vector<Token> read_tokens(const Field& f) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(read_token(f[i], i));
  return out;
}

std::vector<double> read_probs(const Field& f, bool closed_upper = true) {
  std::vector<double> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double p = f[i].num();
    if (!(p >= 0.0 && (closed_upper ? p <= 1.0 : p < 1.0))) f[i].fail("probability out of [0,1]");
    out.push_back(p);
  }
  return out;
}

json tokens_json(const std::vector<Token>& tokens) {
  json arr = json::array();
  for (const auto& t : tokens) arr.push_back(to_json(t));
  return arr;
}

AnnotatedText read_text(const Field& f) {
  AnnotatedText t;
  t.tokens = read_tokens(f.at("tokens"));
  if (t.tokens.empty()) f.at("tokens").fail("empty");
  const std::size_t n = t.tokens.size();
  if (f.has("entities")) {
    auto es = f.at("entities");
    for (std::size_t k = 0; k < es.size(); ++k) {
      EntityMention e{read_span(es[k]), es[k].at("etype").str(), es[k].at("surface").str()};
      check_span(es[k], e.span, n);
      t.entities.push_back(std::move(e));
    }
  }
  if (f.has("deps")) {
    auto ds = f.at("deps");
    for (std::size_t k = 0; k < ds.size(); ++k) {
      DepEdge d{ds[k].at("gov").index(), ds[k].at("rel").str(), ds[k].at("dep").index()};
      if (d.gov >= n || d.dep >= n) ds[k].fail("index out of range");
      if (d.gov == d.dep) ds[k].fail("gov == dep");
      t.deps.push_back(std::move(d));
    }
  }
  for (const char* key : {"np_chunks", "quotes"}) {
    if (!f.has(key)) continue;
    auto ss = f.at(key);
    auto& dst = std::string(key) == "np_chunks" ? t.np_chunks : t.quotes;
    for (std::size_t k = 0; k < ss.size(); ++k) {
      auto s = read_span(ss[k]);
      check_span(ss[k], s, n);
      dst.push_back(s);
    }
  }
  return t;
}

std::string peek_doc_id(const json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_string()) return j.at(key).get<std::string>();
  return {};
}

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    try {
      out.push_back(parse(j));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

template <typename T>
void write_lines(std::ostream& out, const std::vector<T>& items) {
  for (const auto& item : items) out << to_json(item).dump() << '\n';
  if (!out) throw Error("write failed");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

json rel_json(const RelationForm& r) { return json{{"gov", r.gov}, {"rel", r.rel}, {"dep", r.dep}}; }

}  // namespace

json to_json(const Token& t) { return json{{"surface", t.surface}, {"upos", t.upos}}; }

json to_json(const AnnotatedText& t) {
  json j;
  j["tokens"] = tokens_json(t.tokens);
  j["entities"] = json::array();
  for (const auto& e : t.entities) {
    j["entities"].push_back({{"start", e.span.start}, {"end", e.span.end}, {"etype", e.etype}, {"surface", e.surface}});
  }
  j["deps"] = json::array();
  for (const auto& d : t.deps) j["deps"].push_back({{"gov", d.gov}, {"rel", d.rel}, {"dep", d.dep}});
  j["np_chunks"] = json::array();
  for (const auto& s : t.np_chunks) j["np_chunks"].push_back(span_json(s));
  j["quotes"] = json::array();
  for (const auto& s : t.quotes) j["quotes"].push_back(span_json(s));
  return j;
}

json to_json(const Document& d) {
  return json{{"id", d.id}, {"source", to_json(d.source)}, {"reference", to_json(d.reference)}};
}

json to_json(const BeamSet& b) {
  json beams = json::array();
  for (const auto& beam : b.beams) {
    beams.push_back({{"rank", beam.rank}, {"tokens", tokens_json(beam.tokens)}, {"probs", beam.probs}});
  }
  return json{{"doc_id", b.doc_id}, {"beams", beams}};
}

json to_json(const AnnotatedOutput& o) {
  json errors = json::array();
  for (const auto& e : o.errors) {
    errors.push_back({{"start", e.span.start}, {"end", e.span.end}, {"kind", std::string(to_string(e.kind))}});
  }
  return json{{"doc_id", o.doc_id}, {"tokens", tokens_json(o.tokens)}, {"probs", o.probs}, {"errors", errors}};
}

json to_json(const CandidateSample& s) {
  json j{{"doc_id", s.doc_id},
         {"label", std::string(to_string(s.label))},
         {"strategy", std::string(to_string(s.strategy))},
         {"tokens", tokens_json(s.tokens)}};
  j["edited_spans"] = json::array();
  for (const auto& e : s.edited_spans) j["edited_spans"].push_back(span_json(e));
  if (s.gen_probs) j["gen_probs"] = *s.gen_probs;
  if (s.relation) j["relation"] = rel_json(*s.relation);
  return j;
}

json to_json(const TrainingBatch& b) {
  json j{{"doc_id", b.doc_id}, {"positives", json::array()}, {"negatives", json::array()}};
  for (const auto& s : b.positives) j["positives"].push_back(to_json(s));
  for (const auto& s : b.negatives) j["negatives"].push_back(to_json(s));
  if (b.reps) {
    json reps = json::array();
    for (const auto& r : *b.reps) reps.push_back({{"rows", r.rows}, {"entity_mask", r.entity_mask}});
    j["reps"] = reps;
  }
  if (b.gold_probs) j["gold_probs"] = *b.gold_probs;
  j["no_negatives"] = b.no_negatives;
  return j;
}

Document document_from_json(const json& j) {
  Field root(j, peek_doc_id(j, "id"), "");
  Document d;
  d.id = root.at("id").str();
  if (d.id.empty()) root.at("id").fail("empty");
  d.source = read_text(root.at("source"));
  d.reference = read_text(root.at("reference"));
  return d;
}

BeamSet beamset_from_json(const json& j) {
  Field root(j, peek_doc_id(j, "doc_id"), "");
  BeamSet b;
  b.doc_id = root.at("doc_id").str();
  auto beams = root.at("beams");
  for (std::size_t i = 0; i < beams.size(); ++i) {
    Beam beam;
    beam.tokens = read_tokens(beams[i].at("tokens"));
    beam.probs = read_probs(beams[i].at("probs"));
    beam.rank = beams[i].has("rank") ? static_cast<int>(beams[i].at("rank").index()) : static_cast<int>(i);
    if (beam.probs.size() != beam.tokens.size()) {
      beams[i].fail("probs length " + std::to_string(beam.probs.size()) + " != tokens length " +
                    std::to_string(beam.tokens.size()));
    }
    b.beams.push_back(std::move(beam));
  }
  return b;
}

AnnotatedOutput output_from_json(const json& j) {
  Field root(j, peek_doc_id(j, "doc_id"), "");
  AnnotatedOutput o;
  o.doc_id = root.at("doc_id").str();
  o.tokens = read_tokens(root.at("tokens"));
  o.probs = read_probs(root.at("probs"));
  if (o.probs.size() != o.tokens.size()) {
    root.fail("probs length " + std::to_string(o.probs.size()) + " != tokens length " +
              std::to_string(o.tokens.size()));
  }
  if (root.has("errors")) {
    auto es = root.at("errors");
    for (std::size_t k = 0; k < es.size(); ++k) {
      auto kind = parse_error_kind(es[k].at("kind").str());
      if (!kind) es[k].at("kind").fail("unknown error kind '" + es[k].at("kind").str() + "'");
      ErrorSpan e{read_span(es[k]), *kind};
      check_span(es[k], e.span, o.tokens.size());
      o.errors.push_back(e);
    }
  }
  return o;
}

CandidateSample sample_from_json(const json& j) {
  Field root(j, peek_doc_id(j, "doc_id"), "");
  CandidateSample s;
  s.doc_id = root.at("doc_id").str();
  auto label = parse_label(root.at("label").str());
  if (!label) root.at("label").fail("unknown label");
  s.label = *label;
  auto strategy = parse_strategy(root.at("strategy").str());
  if (!strategy) root.at("strategy").fail("unknown strategy");
  s.strategy = *strategy;
  s.tokens = read_tokens(root.at("tokens"));
  if (root.has("edited_spans")) {
    auto es = root.at("edited_spans");
    for (std::size_t k = 0; k < es.size(); ++k) {
      auto sp = read_span(es[k]);
      check_span(es[k], sp, s.tokens.size());
      s.edited_spans.push_back(sp);
    }
  }
  if (root.has("gen_probs")) {
    s.gen_probs = read_probs(root.at("gen_probs"));
    if (s.gen_probs->size() != s.tokens.size()) root.at("gen_probs").fail("length != tokens length");
  }
  if (root.has("relation")) {
    auto r = root.at("relation");
    s.relation = RelationForm{r.at("gov").str(), r.at("rel").str(), r.at("dep").str()};
  }
  return s;
}

TrainingBatch batch_from_json(const json& j) {
  Field root(j, peek_doc_id(j, "doc_id"), "");
  TrainingBatch b;
  b.doc_id = root.at("doc_id").str();
  for (const char* key : {"positives", "negatives"}) {
    auto arr = root.at(key);
    auto& dst = std::string(key) == "positives" ? b.positives : b.negatives;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      dst.push_back(sample_from_json(arr[i].raw()));
      if (dst.back().doc_id != b.doc_id) arr[i].at("doc_id").fail("does not match batch doc_id");
    }
  }
  if (b.positives.empty()) root.at("positives").fail("empty");
  if (root.has("reps")) {
    auto reps = root.at("reps");
    if (reps.size() != b.sample_count()) reps.fail("expected one entry per sample");
    std::vector<RepMatrix> out;
    std::size_t dim = 0;
    for (std::size_t s = 0; s < reps.size(); ++s) {
      RepMatrix m;
      auto rows = reps[s].at("rows");
      if (rows.size() == 0) rows.fail("empty");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Vector v;
        for (std::size_t c = 0; c < rows[r].size(); ++c) v.push_back(rows[r][c].num());
        if (dim == 0) dim = v.size();
        if (v.empty() || v.size() != dim) rows[r].fail("inconsistent dimension");
        m.rows.push_back(std::move(v));
      }
      auto mask = reps[s].at("entity_mask");
      for (std::size_t r = 0; r < mask.size(); ++r) m.entity_mask.push_back(mask[r].boolean());
      if (m.entity_mask.size() != m.rows.size()) mask.fail("length != rows");
      out.push_back(std::move(m));
    }
    b.reps = std::move(out);
  }
  if (root.has("gold_probs")) {
    auto gp = root.at("gold_probs");
    if (gp.size() != b.sample_count()) gp.fail("expected one entry per sample");
    std::vector<std::vector<double>> out;
    for (std::size_t s = 0; s < gp.size(); ++s) out.push_back(read_probs(gp[s]));
    b.gold_probs = std::move(out);
  }
  if (root.has("no_negatives")) b.no_negatives = root.at("no_negatives").boolean();
  return b;
}

Corpus read_corpus(std::istream& in) {
  auto corpus = read_lines<Document>(in, [](const json& j) { return document_from_json(j); });
  std::set<std::string> ids;
  for (const auto& d : corpus) {
    if (!ids.insert(d.id).second) throw Error("doc '" + d.id + "': duplicate id");
  }
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const Corpus& corpus) { write_lines(out, corpus); }

void write_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  auto out = open_out(path);
  write_corpus(out, corpus);
}

std::vector<BeamSet> read_beams(std::istream& in, std::size_t max_beams) {
  return read_lines<BeamSet>(in, [&](const json& j) {
    auto b = beamset_from_json(j);
    if (max_beams > 0 && b.beams.size() > max_beams) {
      throw Error("doc '" + b.doc_id + "': " + std::to_string(b.beams.size()) +
                  " beams exceed beam size " + std::to_string(max_beams));
    }
    return b;
  });
}

std::vector<BeamSet> read_beams(const std::filesystem::path& path, std::size_t max_beams) {
  auto in = open_in(path);
  return read_beams(in, max_beams);
}

void write_beams(std::ostream& out, const std::vector<BeamSet>& beams) { write_lines(out, beams); }

std::vector<AnnotatedOutput> read_outputs(std::istream& in) {
  return read_lines<AnnotatedOutput>(in, [](const json& j) { return output_from_json(j); });
}

std::vector<AnnotatedOutput> read_outputs(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_outputs(in);
}

void write_outputs(std::ostream& out, const std::vector<AnnotatedOutput>& outputs) { write_lines(out, outputs); }

std::vector<CandidateSample> read_samples(std::istream& in) {
  return read_lines<CandidateSample>(in, [](const json& j) { return sample_from_json(j); });
}

std::vector<CandidateSample> read_samples(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_samples(in);
}

void write_samples(std::ostream& out, const std::vector<CandidateSample>& samples) { write_lines(out, samples); }

std::vector<TrainingBatch> read_batches(std::istream& in) {
  return read_lines<TrainingBatch>(in, [](const json& j) { return batch_from_json(j); });
}

std::vector<TrainingBatch> read_batches(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_batches(in);
}

void write_batches(std::ostream& out, const std::vector<TrainingBatch>& batches) { write_lines(out, batches); }

}  // namespace cliff
