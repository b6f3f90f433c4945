// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include <gtest/gtest.h>

#include "kgcrawl/graph_io.hpp"
#include "test_paths.hpp"

namespace kgcrawl {
namespace {

KnowledgeGraph golden() { return load_graph_jsonl(test_data("toy/golden_graph.jsonl")); }

TEST(GraphIo, JsonlRoundTrip) {
  auto g = golden();
  EXPECT_EQ(g.seed().text(), "Barack Obama");
  std::istringstream in(graph_to_jsonl(g));
  EXPECT_EQ(read_graph_jsonl(in), g);
  EXPECT_EQ(graph_to_jsonl(g), read_file(test_data("toy/golden_graph.jsonl")));
}

TEST(GraphIo, DotIsDeterministicWithOneNodePerEntity) {
  auto g = golden();
  auto dot = graph_to_dot(g);
  EXPECT_EQ(dot, graph_to_dot(golden()));
  EXPECT_EQ(dot, read_file(test_data("toy/golden_graph.dot")));
  std::size_t nodes = 0;
  std::istringstream lines(dot);
  for (std::string l; std::getline(lines, l);) {
    if (l.find("[label=") != std::string::npos && l.find("->") == std::string::npos) {
      ++nodes;
    }
  }
  EXPECT_EQ(nodes, g.entities().size());
}

TEST(GraphIo, DotEscapesQuotes) {
  KnowledgeGraph g(EntityName("The \"Boss\""));
  g.insert(Triplet(EntityName("The \"Boss\""), RelationName("alias"),
                   EntityName("a\\b"), 1, {{"x", "alias"}}));
  auto dot = graph_to_dot(g);
  EXPECT_NE(dot.find(R"(label="The \"Boss\"")"), std::string::npos);
  EXPECT_NE(dot.find(R"(label="a\\b")"), std::string::npos);
}

TEST(GraphIo, ErrorsCarryLineNumbers) {
  std::istringstream bad(
      "{\"subject\":\"a\",\"relation\":\"r\",\"object\":\"b\",\"depth\":1,"
      "\"votes\":1,\"provenance\":[[\"a\",\"r\"]]}\n"
      "{not json\n");
  try {
    read_graph_jsonl(bad);
    FAIL() << "expected GraphFormatError";
  } catch (const GraphFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream votes(
      "{\"subject\":\"a\",\"relation\":\"r\",\"object\":\"b\",\"depth\":1,"
      "\"votes\":3,\"provenance\":[[\"a\",\"r\"]]}\n");
  EXPECT_THROW(read_graph_jsonl(votes), GraphFormatError);
}

TEST(GraphIo, EmptyGraphNeedsSeed) {
  std::istringstream empty("");
  EXPECT_THROW(read_graph_jsonl(empty), GraphFormatError);
  std::istringstream again("");
  EXPECT_EQ(read_graph_jsonl(again, "Alan Turing").seed().text(), "Alan Turing");
}

}  // namespace
}  // namespace kgcrawl
