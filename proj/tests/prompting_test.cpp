// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "kgcrawl/prompting.hpp"
#include "test_paths.hpp"

namespace kgcrawl {
namespace {

TEST(Prompts, MatchTranscribedAppendix) {
  EXPECT_EQ(build_qa_prompt(load_fixed_examples(prompt_dir() / "relation_generation.txt"),
                            "Philippines"),
            read_file(test_data("prompts/relation_philippines.txt")));
  EXPECT_EQ(build_qa_prompt(
                load_fixed_examples(prompt_dir() / "pure_object_generation.txt"),
                object_query("Barack Obama", "child")),
            read_file(test_data("prompts/pure_barack_obama_child.txt")));
  EXPECT_EQ(build_qa_prompt(
                load_fixed_examples(prompt_dir() / "dk_object_generation.txt"),
                object_query("Queen Elizabeth II", "date of death")),
            read_file(test_data("prompts/dk_queen_elizabeth_date_of_death.txt")));
}

TEST(Prompts, Layout) {
  std::vector<InContextExample> ex{{"q1", "a1"}, {"q2", "a2"}};
  EXPECT_EQ(build_qa_prompt(ex, "x"), "Q: q1\nA: a1\n\nQ: q2\nA: a2\n\nQ: x\nA:");
  EXPECT_THROW(build_qa_prompt({}, "x"), std::invalid_argument);
  EXPECT_THROW(build_qa_prompt(ex, "  "), std::invalid_argument);
  EXPECT_EQ(build_subject_paraphrase_prompt(EntityName("Alan Turing")),
            "Alan Turing is also known as:");
  auto rp = build_relation_paraphrase_prompts(RelationName("notable work"));
  EXPECT_EQ(rp[0], "'notable work' may be described as");
  EXPECT_EQ(rp[1], "'notable work' refers to");
  EXPECT_EQ(rp[2], "please describe 'notable work' in a few words:");
}

TEST(ParseList, Examples) {
  EXPECT_EQ(parse_list_answer(" leader name # cctld # capital # calling code"),
            (std::vector<std::string>{"leader name", "cctld", "capital", "calling code"}));
  EXPECT_EQ(parse_list_answer(" Sasha Obama # Malia Obama\nQ: junk"),
            (std::vector<std::string>{"Sasha Obama", "Malia Obama"}));
  EXPECT_EQ(parse_list_answer("a # # A. # b"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(parse_list_answer("\n\n  x"), (std::vector<std::string>{"x"}));
  EXPECT_TRUE(parse_list_answer("").empty());
}

TEST(ParseObject, DontKnowVariants) {
  EXPECT_TRUE(parse_object_answer(" Don't know").is_dont_know());
  EXPECT_TRUE(parse_object_answer(" don\xE2\x80\x99t know.").is_dont_know());
  EXPECT_TRUE(parse_object_answer(" Dont know").is_dont_know());
  EXPECT_TRUE(parse_object_answer(" Sasha Obama # Don't know").is_dont_know());
  EXPECT_TRUE(parse_object_answer("").is_dont_know());
  auto a = parse_object_answer(" Sasha Obama # Malia Obama");
  ASSERT_EQ(a.objects().size(), 2u);
  EXPECT_EQ(a.objects()[1].text(), "Malia Obama");
  EXPECT_FALSE(is_dont_know("Don't know much"));
}

TEST(ParseObject, RoundTripsRandomLists) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vocab{"Italy", "Jack Depp", "Lily-Rose Depp",
                                       "Augsburg", "Catholic priest", "NBA"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> picked;
    for (const auto& v : vocab) {
      if (rng() % 2) picked.push_back(v);
    }
    if (picked.empty()) continue;
    std::string text = " ";
    for (std::size_t k = 0; k < picked.size(); ++k) {
      text += (k ? " # " : "") + picked[k];
    }
    auto a = parse_object_answer(text);
    ASSERT_EQ(a.objects().size(), picked.size());
    for (std::size_t k = 0; k < picked.size(); ++k) {
      EXPECT_EQ(a.objects()[k].text(), picked[k]);
    }
  }
}

TEST(ParseParaphrase, Examples) {
  EXPECT_EQ(parse_paraphrase_answer(" The father of computing", "Alan Turing"),
            "The father of computing");
  EXPECT_EQ(parse_paraphrase_answer(" \"creation\"", "notable work"), "creation");
  EXPECT_EQ(parse_paraphrase_answer(" a work of 'great value' or a work of 'importance'",
                                    "notable work"),
            "a work of 'great value' or a work of 'importance'");
  EXPECT_EQ(parse_paraphrase_answer(" 'x' or 'y'", "r"), "'x' or 'y'");
  EXPECT_FALSE(parse_paraphrase_answer(" Alan Turing.", "Alan Turing"));
  EXPECT_FALSE(parse_paraphrase_answer(" a # b", "r"));
  EXPECT_FALSE(parse_paraphrase_answer("   ", "r"));
}

}  // namespace
}  // namespace kgcrawl
