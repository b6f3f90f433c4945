// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kgcrawl {

using ordered_json = nlohmann::ordered_json;

std::string triplet_to_json_line(const Triplet& t) {
  ordered_json prov = ordered_json::array();
  for (const auto& r : t.provenance()) {
    prov.push_back(ordered_json::array({r.subject, r.relation}));
  }
  ordered_json j;
  j["subject"] = t.subject().text();
  j["relation"] = t.relation().text();
  j["object"] = t.object().text();
  j["depth"] = t.depth();
  j["votes"] = t.votes();
  j["provenance"] = std::move(prov);
  return j.dump();
}

Triplet triplet_from_json_line(const std::string& line, std::size_t line_no) {
  try {
    auto j = nlohmann::json::parse(line);
    std::vector<Realization> prov;
    for (const auto& p : j.at("provenance")) {
      if (!p.is_array() || p.size() != 2) {
        throw GraphFormatError("provenance entries must be [subject, relation]",
                               line_no);
      }
      prov.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
    }
    Triplet t(EntityName(j.at("subject").get<std::string>()),
              RelationName(j.at("relation").get<std::string>()),
              EntityName(j.at("object").get<std::string>()),
              j.at("depth").get<int>(), std::move(prov));
    if (j.contains("votes") && j["votes"].get<std::size_t>() != t.votes()) {
      throw GraphFormatError("votes does not match provenance length", line_no);
    }
    return t;
  } catch (const GraphFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw GraphFormatError(e.what(), line_no);
  }
}

void write_graph_jsonl(const KnowledgeGraph& g, std::ostream& out) {
  for (const auto& t : g.triplets()) out << triplet_to_json_line(t) << '\n';
}

std::string graph_to_jsonl(const KnowledgeGraph& g) {
  std::ostringstream os;
  write_graph_jsonl(g, os);
  return os.str();
}

void save_graph_jsonl(const KnowledgeGraph& g,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_graph_jsonl(g, out);
}

KnowledgeGraph read_graph_jsonl(std::istream& in,
                                std::optional<std::string> seed) {
  std::vector<Triplet> triplets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    triplets.push_back(triplet_from_json_line(line, line_no));
  }
  if (!seed) {
    for (const auto& t : triplets) {
      if (t.depth() == 1) {
        seed = t.subject().text();
        break;
      }
    }
  }
  if (!seed) {
    throw GraphFormatError("cannot infer seed; no depth-1 triplet", line_no);
  }
  return KnowledgeGraph::from_triplets(EntityName(*seed), std::move(triplets));
}

KnowledgeGraph load_graph_jsonl(const std::filesystem::path& path,
                                std::optional<std::string> seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return read_graph_jsonl(in, std::move(seed));
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_graph_dot(const KnowledgeGraph& g, std::ostream& out) {
  out << "digraph kg {\n";
  const auto& entities = g.entities();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    out << "  n" << i << " [label=" << dot_quote(entities[i].text());
    if (i == 0) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& t : g.triplets()) {
    out << "  n" << *g.entity_index(t.subject().text()) << " -> n"
        << *g.entity_index(t.object().text())
        << " [label=" << dot_quote(t.relation().text()) << "];\n";
  }
  out << "}\n";
}

std::string graph_to_dot(const KnowledgeGraph& g) {
  std::ostringstream os;
  write_graph_dot(g, os);
  return os.str();
}

}  // namespace kgcrawl
