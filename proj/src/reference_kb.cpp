// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/reference_kb.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "kgcrawl/random.hpp"
#include "kgcrawl/text_util.hpp"

namespace kgcrawl {

InContextExample::InContextExample(std::string query, std::string answer)
    : query_(std::move(query)), answer_(std::move(answer)) {
  auto bad = [](const std::string& s) {
    return trim(s).empty() || s.find_first_of("\r\n") != std::string::npos;
  };
  if (bad(query_) || bad(answer_)) {
    throw std::invalid_argument(
        "in-context example fields must be non-empty single lines");
  }
}

void ReferenceKb::add(const EntityName& s, const RelationName& r,
                      const EntityName& o) {
  auto pair_key = s.key() + " # " + r.key();
  auto [it, inserted] = by_pair_.emplace(pair_key, facts_.size());
  if (inserted) {
    if (!by_subject_.contains(s.key())) subjects_.push_back(s);
    by_subject_[s.key()].push_back(facts_.size());
    facts_.push_back({s, r, {}});
  }
  auto& objects = facts_[it->second].objects;
  auto okey = o.key();
  if (std::none_of(objects.begin(), objects.end(),
                   [&](const EntityName& e) { return e.key() == okey; })) {
    objects.push_back(o);
    ++counts_[s.key()];
  }
}

std::vector<const ReferenceFact*> ReferenceKb::facts_for(
    std::string_view subject) const {
  std::vector<const ReferenceFact*> out;
  if (auto it = by_subject_.find(normalize(subject)); it != by_subject_.end()) {
    for (auto idx : it->second) out.push_back(&facts_[idx]);
  }
  return out;
}

const ReferenceFact* ReferenceKb::find(std::string_view subject,
                                       std::string_view relation) const {
  auto it = by_pair_.find(normalize(subject) + " # " + normalize(relation));
  return it == by_pair_.end() ? nullptr : &facts_[it->second];
}

std::size_t ReferenceKb::fact_count(std::string_view subject) const {
  auto it = counts_.find(normalize(subject));
  return it == counts_.end() ? 0 : it->second;
}

ReferenceKb read_reference_kb(std::istream& in, bool strict) {
  ReferenceKb kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);

    std::string problem;
    if (cols.size() != 3) {
      problem = "expected 3 tab-separated columns, got " +
                std::to_string(cols.size());
    } else if (!is_valid_name(cols[0]) || !is_valid_name(cols[1]) ||
               !is_valid_name(cols[2])) {
      problem = "empty or invalid field";
    }
    if (!problem.empty()) {
      if (strict) {
        throw KbParseError(
            "reference KB line " + std::to_string(line_no) + ": " + problem,
            line_no);
      }
      kb.malformed_.push_back(line_no);
      continue;
    }
    kb.add(EntityName(cols[0]), RelationName(cols[1]), EntityName(cols[2]));
  }
  return kb;
}

ReferenceKb load_reference_kb(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("reference KB not found: " + path.string());
  }
  return read_reference_kb(in, strict);
}

namespace {

std::string join_names(const std::vector<std::string>& names) {
  return join(names, " # ");
}

}  // namespace

std::vector<InContextExample> sample_relation_examples(const ReferenceKb& kb,
                                                       std::size_t k,
                                                       std::uint64_t rng_seed) {
  if (kb.subjects().size() < k) {
    throw InsufficientDataError(
        "need " + std::to_string(k) + " subjects, reference KB has " +
        std::to_string(kb.subjects().size()));
  }
  std::vector<std::size_t> order(kb.subjects().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  seeded_shuffle(order, rng_seed);

  std::vector<InContextExample> out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& subject = kb.subjects()[order[i]];
    std::vector<std::string> relations;
    for (const auto* f : kb.facts_for(subject.text())) {
      relations.push_back(f->relation.text());
    }
    out.emplace_back(subject.text(), join_names(relations));
  }
  return out;
}

std::vector<InContextExample> sample_object_examples(const ReferenceKb& kb,
                                                     std::size_t k,
                                                     std::uint64_t rng_seed) {
  if (kb.facts().size() < k) {
    throw InsufficientDataError(
        "need " + std::to_string(k) + " facts, reference KB has " +
        std::to_string(kb.facts().size()));
  }
  std::vector<std::size_t> order(kb.facts().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  seeded_shuffle(order, rng_seed);

  std::vector<InContextExample> out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = kb.facts()[order[i]];
    std::vector<std::string> objects;
    for (const auto& o : f.objects) objects.push_back(o.text());
    out.emplace_back(f.subject.text() + " # " + f.relation.text(),
                     join_names(objects));
  }
  return out;
}

std::vector<InContextExample> read_fixed_examples(std::istream& in) {
  std::vector<InContextExample> out;
  std::optional<std::string> query;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw KbParseError("example file line " + std::to_string(line_no) + ": " +
                           what,
                       line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      if (query) fail("record has no answer line");
      continue;
    }
    if (!query) {
      if (!line.starts_with("Q:")) fail("expected a \"Q:\" line");
      query = trim(std::string_view(line).substr(2));
      if (query->empty()) fail("empty query");
    } else {
      if (!line.starts_with("A:")) fail("expected an \"A:\" line");
      auto answer = trim(std::string_view(line).substr(2));
      if (answer.empty()) fail("empty answer");
      out.emplace_back(std::move(*query), std::move(answer));
      query.reset();
    }
  }
  if (query) fail("record has no answer line");
  return out;
}

std::vector<InContextExample> load_fixed_examples(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("example file not found: " + path.string());
  return read_fixed_examples(in);
}

std::string format_fixed_examples(
    const std::vector<InContextExample>& examples) {
  std::string out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (i) out += "\n";
    out += "Q: " + examples[i].query() + "\nA: " + examples[i].answer() + "\n";
  }
  return out;
}

void save_fixed_examples(const std::vector<InContextExample>& examples,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_fixed_examples(examples);
}

}  // namespace kgcrawl
