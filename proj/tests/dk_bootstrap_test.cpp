// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <gtest/gtest.h>

#include "kgcrawl/dk_bootstrap.hpp"
#include "kgcrawl/mock_backend.hpp"
#include "test_paths.hpp"

namespace kgcrawl {
namespace {

const std::set<std::string> kErring{
    "Bill Clinton # children", "Heinrich Peters # occupation",
    "Klaus Baumgartner # work location", "Ferydoon Zandi # place of birth",
    "Apayao # head of government"};

std::vector<std::pair<std::string, std::string>> all_pairs(const ReferenceKb& kb) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : kb.facts()) out.emplace_back(f.subject.text(), f.relation.text());
  return out;
}

DkProbeResult result(const std::string& s, const std::string& r,
                     ProbeVerdict v, const std::string& gold = "g") {
  return {EntityName(s), RelationName(r), {EntityName(gold)},
          ObjectAnswer::dont_know(), v, std::nullopt};
}

TEST(Classify, Examples) {
  std::vector<EntityName> chelsea{EntityName("Chelsea Clinton")};
  EXPECT_EQ(classify_prediction(ObjectAnswer::objects({EntityName("Klay Thompson")}),
                                chelsea),
            ProbeVerdict::kWrong);
  EXPECT_EQ(classify_prediction(ObjectAnswer::objects({EntityName("Italy")}),
                                {EntityName("italy")}),
            ProbeVerdict::kCorrect);
  EXPECT_EQ(classify_prediction(ObjectAnswer::dont_know(), chelsea),
            ProbeVerdict::kAbstained);
  // Tolerant match: "University of Music and Performing Arts Vienna" vs a
  // one-word-shorter variant has F1 = 14/15 > 0.85.
  EXPECT_TRUE(object_matches(EntityName("University of Music and Performing Arts"),
                             EntityName("University of Music and Performing Arts Vienna")));
  EXPECT_FALSE(object_matches(EntityName("Sasha Obama"), EntityName("Sasha")));
}

TEST(Probe, FindsExactlyTheErringPairs) {
  auto kb = load_reference_kb(test_data("dk/reference_kb.tsv"));
  MockBackend mock(true);
  mock.load_script(test_data("dk/mock_script.jsonl"));
  auto pure = load_fixed_examples(prompt_dir() / "pure_object_generation.txt");
  auto results = probe(kb, mock, all_pairs(kb), {pure, 4});
  ASSERT_EQ(results.size(), 20u);
  std::set<std::string> wrong;
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].subject, kb.facts()[i].subject);  // input order
    EXPECT_FALSE(results[i].error);
    if (results[i].verdict == ProbeVerdict::kWrong) {
      wrong.insert(results[i].subject.text() + " # " + results[i].relation.text());
    } else {
      EXPECT_EQ(results[i].verdict, ProbeVerdict::kCorrect);
    }
  }
  EXPECT_EQ(wrong, kErring);
  for (const auto& req : mock.requests()) EXPECT_TRUE(req.is_greedy());
}

TEST(Probe, BackendErrorsAbstainWithoutAborting) {
  auto kb = load_reference_kb(test_data("dk/reference_kb.tsv"));
  MockBackend mock(true);  // no fixtures: every call fails
  auto pure = load_fixed_examples(prompt_dir() / "pure_object_generation.txt");
  auto results = probe(kb, mock, all_pairs(kb), {pure, 2});
  ASSERT_EQ(results.size(), 20u);
  for (const auto& r : results) {
    EXPECT_EQ(r.verdict, ProbeVerdict::kAbstained);
    EXPECT_TRUE(r.error);
  }
  EXPECT_THROW(probe(kb, mock, {{"Nobody", "knows"}}, {pure, 1}), std::invalid_argument);
}

TEST(BuildExamples, HalfDontKnowAndDeterministic) {
  std::vector<DkProbeResult> rs;
  for (int i = 0; i < 6; ++i) rs.push_back(result("W" + std::to_string(i), "r", ProbeVerdict::kWrong));
  for (int i = 0; i < 6; ++i) rs.push_back(result("C" + std::to_string(i), "r", ProbeVerdict::kCorrect, "gold" + std::to_string(i)));
  rs.push_back(result("A", "r", ProbeVerdict::kAbstained));
  auto ex = build_dk_examples(rs, 10, 3);
  ASSERT_EQ(ex.size(), 10u);
  EXPECT_EQ(ex, build_dk_examples(rs, 10, 3));
  std::size_t dk = 0;
  std::set<std::string> queries;
  for (const auto& e : ex) {
    EXPECT_TRUE(queries.insert(e.query()).second);
    if (e.answer() == "Don't know") {
      ++dk;
      EXPECT_EQ(e.query()[0], 'W');
    } else {
      EXPECT_EQ(e.query()[0], 'C');
      EXPECT_EQ(e.answer(), "gold" + e.query().substr(1, 1));
    }
  }
  EXPECT_EQ(dk, 5u);
}

TEST(BuildExamples, MinimalAndErrors) {
  std::vector<DkProbeResult> rs{result("Bill Clinton", "children", ProbeVerdict::kWrong),
                                result("Monte Cremasco", "country", ProbeVerdict::kCorrect, "Italy")};
  auto ex = build_dk_examples(rs, 2, 0);
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_TRUE(std::count(ex.begin(), ex.end(),
                         InContextExample("Bill Clinton # children", "Don't know")));
  EXPECT_THROW(build_dk_examples(rs, 3, 0), std::invalid_argument);
  try {
    build_dk_examples(rs, 4, 0);
    FAIL();
  } catch (const InsufficientProbesError& e) {
    EXPECT_EQ(e.wrong(), 1u);
    EXPECT_EQ(e.correct(), 1u);
  }
}

TEST(BuildExamples, DuplicatePairsCountOnce) {
  std::vector<DkProbeResult> rs{result("W", "r", ProbeVerdict::kWrong),
                                result("w", "R", ProbeVerdict::kWrong),
                                result("C", "r", ProbeVerdict::kCorrect)};
  EXPECT_THROW(build_dk_examples(rs, 4, 0), InsufficientProbesError);
}

}  // namespace
}  // namespace kgcrawl
