// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "kgcrawl/kb_core.hpp"

namespace kgcrawl {

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// One JSON object per triplet, in insertion order:
//   {"subject":..,"relation":..,"object":..,"depth":..,"votes":..,
//    "provenance":[[subject_realization, relation_realization], ...]}
std::string triplet_to_json_line(const Triplet& t);
Triplet triplet_from_json_line(const std::string& line, std::size_t line_no = 0);

void write_graph_jsonl(const KnowledgeGraph& g, std::ostream& out);
std::string graph_to_jsonl(const KnowledgeGraph& g);
void save_graph_jsonl(const KnowledgeGraph& g, const std::filesystem::path& path);

/// The JSONL format carries no seed record. When `seed` is not given, the
/// subject of the first depth-1 triplet is used; an empty file then needs an
/// explicit seed.
KnowledgeGraph read_graph_jsonl(std::istream& in,
                                std::optional<std::string> seed = std::nullopt);
KnowledgeGraph load_graph_jsonl(const std::filesystem::path& path,
                                std::optional<std::string> seed = std::nullopt);

/// Digraph with one node per entity (in entity order) and one labeled edge per
/// triplet.
void write_graph_dot(const KnowledgeGraph& g, std::ostream& out);
std::string graph_to_dot(const KnowledgeGraph& g);

}  // namespace kgcrawl
