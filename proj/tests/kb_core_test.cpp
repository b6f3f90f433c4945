// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "kgcrawl/kb_core.hpp"
#include "oracles.hpp"

namespace kgcrawl {
namespace {

Triplet fact(const std::string& s, const std::string& r, const std::string& o,
             int depth = 1) {
  return Triplet(EntityName(s), RelationName(r), EntityName(o), depth, {{s, r}});
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize("  Italy "), "italy");
  EXPECT_EQ(normalize("Sasha  Obama."), "sasha obama");
  EXPECT_EQ(normalize("NBA"), "nba");
  EXPECT_EQ(normalize("a\t b \n c,"), "a b c");
  EXPECT_EQ(normalize(""), "");
  EXPECT_EQ(normalize(" ., "), "");
}

TEST(Normalize, Idempotent) {
  for (const char* s : {"  Foo  Bar.,", "x", "A. B.", "\tq\n"}) {
    EXPECT_EQ(normalize(normalize(s)), normalize(s)) << s;
  }
}

TEST(Tokenize, DropsSeparator) {
  EXPECT_EQ(tokenize("Barack Obama # spouse # Michelle"),
            (std::vector<std::string>{"barack", "obama", "spouse", "michelle"}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(TokenF1, Examples) {
  EXPECT_DOUBLE_EQ(token_f1("italy", "Italy"), 1.0);
  EXPECT_NEAR(token_f1("sasha obama", "sasha"), 2.0 / 3.0, 1e-9);
  EXPECT_DOUBLE_EQ(token_f1("a b", "c d"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1("", ""), 1.0);
  EXPECT_DOUBLE_EQ(token_f1("a", ""), 0.0);
  // Multiset intersection: "a a b" vs "a b b" share one a and one b.
  EXPECT_NEAR(token_f1("a a b", "a b b"), 4.0 / 6.0, 1e-12);
}

TEST(TokenF1, RandomPairsMatchOracle) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab cA.B #";
  std::uniform_int_distribution<int> len(0, 14);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  auto gen = [&] {
    std::string s;
    for (int i = 0, n = len(rng); i < n; ++i) s.push_back(alphabet[ch(rng)]);
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = gen();
    auto b = gen();
    const double got = token_f1(a, b);
    EXPECT_NEAR(got, oracle::f1(a, b), 1e-9) << '"' << a << "\" vs \"" << b << '"';
    EXPECT_DOUBLE_EQ(got, token_f1(b, a));
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
    if (!tokenize(a).empty()) EXPECT_DOUBLE_EQ(token_f1(a, a), 1.0);
  }
}

TEST(Names, Validation) {
  EXPECT_EQ(EntityName("  Italy ").text(), "Italy");
  EXPECT_THROW(EntityName(""), std::invalid_argument);
  EXPECT_THROW(EntityName("   "), std::invalid_argument);
  EXPECT_THROW(EntityName("a # b"), std::invalid_argument);
  EXPECT_THROW(RelationName("a\tb"), std::invalid_argument);
  EXPECT_THROW(RelationName("a\nb"), std::invalid_argument);
  EXPECT_FALSE(is_valid_name("."));
  EXPECT_TRUE(is_valid_name("Lily-Rose Depp"));
}

TEST(Triplet, Invariants) {
  EXPECT_THROW(fact("a", "b", "c", 0), std::invalid_argument);
  EXPECT_THROW(Triplet(EntityName("a"), RelationName("b"), EntityName("c"), 1, {}),
               std::invalid_argument);
  auto t = fact("a", "b", "c");
  t.merge_provenance({{"a", "b"}, {"x", "b"}});
  EXPECT_EQ(t.votes(), 2u);
  EXPECT_EQ(t.provenance()[1], (Realization{"x", "b"}));
}

TEST(FactKey, Examples) {
  EXPECT_EQ(fact_key(fact("Barack Obama", "spouse", "Michelle Obama")),
            "barack obama # spouse # michelle obama");
  EXPECT_EQ(fact_key(fact("X", "r", "Y")), fact_key(fact("x", "R", "y")));
  EXPECT_NE(fact_key(fact("A", "b", "C")), fact_key(fact("A", "b", "D")));
}

TEST(Dedup, IdenticalFactsCollapse) {
  auto out = dedup_facts({fact("a", "b", "c"), fact("A", "B", "C.")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].subject().text(), "a");
}

TEST(Dedup, BoundaryIsKept) {
  auto [a, b] = oracle::boundary_pair();
  ASSERT_DOUBLE_EQ(token_f1(fact_key(a), fact_key(b)), 0.85);
  EXPECT_EQ(dedup_facts({a, b}).size(), 2u);
  EXPECT_EQ(dedup_facts({a, b}, 0.84).size(), 1u);
}

TEST(Dedup, MergesProvenanceIntoSurvivor) {
  auto a = Triplet(EntityName("Barack Obama"), RelationName("political party"),
                   EntityName("Democratic Party"), 1,
                   {{"Barack Obama", "political party"}});
  auto b = Triplet(EntityName("Barack Obama"), RelationName("political party"),
                   EntityName("Democratic Party (United States)"), 1,
                   {{"Obama", "political party"}, {"Barack Obama", "political party"}});
  auto out = dedup_facts({a, b});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].object().text(), "Democratic Party");
  EXPECT_EQ(out[0].votes(), 2u);
}

TEST(Dedup, RejectsBadThreshold) {
  EXPECT_THROW(dedup_facts({}, 0.0), std::invalid_argument);
  EXPECT_THROW(dedup_facts({}, 1.5), std::invalid_argument);
}

TEST(Dedup, RandomListsMatchOracleAndProperties) {
  std::mt19937_64 rng(2026);
  for (int round = 0; round < 200; ++round) {
    auto facts = oracle::random_facts(rng, 30);
    if (round % 10 == 0) {
      auto [a, b] = oracle::boundary_pair();
      facts.push_back(a);
      facts.push_back(b);
    }
    auto expected = oracle::dedup(facts, 0.85);
    auto got = dedup_facts(facts, 0.85);
    ASSERT_EQ(got.size(), expected.kept.size()) << "round " << round;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(fact_key(got[i]), fact_key(facts[expected.kept[i]]));
      EXPECT_EQ(got[i].votes(), expected.votes[i]);
    }
    // Idempotence and subsequence order.
    auto again = dedup_facts(got, 0.85);
    ASSERT_EQ(again.size(), got.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(again[i], got[i]);
    for (std::size_t i = 1; i < expected.kept.size(); ++i) {
      EXPECT_LT(expected.kept[i - 1], expected.kept[i]);
    }
  }
}

TEST(KnowledgeGraph, SeedAndIndexes) {
  KnowledgeGraph g(EntityName("Barack Obama"));
  EXPECT_TRUE(g.contains_entity("barack obama"));
  EXPECT_EQ(g.entity_index("Barack Obama"), 0u);
  EXPECT_TRUE(g.insert(fact("Barack Obama", "spouse", "Michelle Obama")));
  EXPECT_TRUE(g.contains_entity("MICHELLE OBAMA"));
  EXPECT_TRUE(g.contains_relation("Spouse"));
  EXPECT_EQ(g.entities().size(), 2u);
}

TEST(KnowledgeGraph, ExactDuplicatesMergeVotes) {
  KnowledgeGraph g(EntityName("a"));
  EXPECT_TRUE(g.insert(fact("a", "r", "b")));
  auto dup = Triplet(EntityName("A"), RelationName("R"), EntityName("b."), 1,
                     {{"alt", "r"}});
  EXPECT_FALSE(g.insert(dup));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.triplets()[0].votes(), 2u);
}

TEST(KnowledgeGraph, RandomInsertsNeverDuplicate) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    KnowledgeGraph g(EntityName("seed"));
    for (auto& t : oracle::random_facts(rng, 30)) g.insert(t);
    std::set<std::string> keys;
    for (const auto& t : g.triplets()) {
      EXPECT_TRUE(keys.insert(fact_key(t)).second);
      EXPECT_TRUE(g.contains_entity(t.subject().text()));
      EXPECT_TRUE(g.contains_entity(t.object().text()));
      EXPECT_TRUE(g.contains_relation(t.relation().text()));
    }
  }
}

TEST(KnowledgeGraph, FromTripletsRebuildsIndexes) {
  auto g = KnowledgeGraph::from_triplets(
      EntityName("s"), {fact("s", "r", "o"), fact("o", "q", "p", 2)});
  EXPECT_EQ(g.entities().size(), 3u);
  EXPECT_EQ(g.relations().size(), 2u);
}

}  // namespace
}  // namespace kgcrawl
