// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "kgcrawl/evaluation.hpp"
#include "kgcrawl/graph_io.hpp"
#include "oracles.hpp"
#include "test_paths.hpp"

namespace kgcrawl {
namespace {

std::string words(int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += (i > 1 ? " w" : "w") + std::to_string(i);
  return s;
}

Triplet fact(const std::string& s, const std::string& r, const std::string& o,
             int depth = 1) {
  return Triplet(EntityName(s), RelationName(r), EntityName(o), depth, {{s, r}});
}

// Returns a fixed snippet, or fails for queries in `broken`.
class ScriptedProvider : public SnippetProvider {
 public:
  std::map<std::string, std::string> snippets;
  std::set<std::string> broken;
  std::string fetch(const std::string& q) override {
    if (broken.contains(q)) throw ProviderError("down");
    auto it = snippets.find(q);
    return it == snippets.end() ? "" : it->second;
  }
};

TEST(Window, Examples) {
  EXPECT_EQ(extract_window("<b>Michelle</b> Obama https://x.y is"), "Michelle Obama is");
  EXPECT_EQ(extract_window(words(50)), words(40));
  EXPECT_EQ(extract_window(""), "");
  EXPECT_EQ(extract_window("a www.example.com b (http://x.y) c"), "a b c");
  EXPECT_EQ(extract_window("x < y and z"), "x < y and z");
}

TEST(Window, TagsAndUrlsDoNotCount) {
  std::string raw;
  for (int i = 1; i <= 40; ++i) {
    raw += "<i>w" + std::to_string(i) + "</i> https://u" + std::to_string(i) + ".org ";
  }
  EXPECT_EQ(extract_window(raw + "tail"), words(40));
}

TEST(Containment, TokenAligned) {
  EXPECT_TRUE(window_contains("Barack Obama married Michelle Obama.", "michelle  obama"));
  EXPECT_FALSE(window_contains("Stuart Turing", "art"));
  EXPECT_FALSE(window_contains("the Lakers of the NBA", "Lakers (NBA)"));
  EXPECT_TRUE(window_contains("the Lakers (NBA)", "NBA"));
  EXPECT_FALSE(window_contains("born in England", "United Kingdom"));
  EXPECT_FALSE(window_contains("anything", ""));
}

TEST(VerifyFact, BoundaryAndProviderErrors) {
  ScriptedProvider p;
  p.snippets["Barack Obama spouse"] = "... and his wife Michelle Obama ...";
  p.snippets["X r"] = words(39) + " Maida Vale";
  p.snippets["Y r"] = words(38) + " Maida Vale";
  p.broken.insert("Z r");
  EXPECT_EQ(verify_fact(fact("Barack Obama", "spouse", "Michelle Obama"), p).status,
            VerdictStatus::kVerified);
  EXPECT_EQ(verify_fact(fact("X", "r", "Maida Vale"), p).status, VerdictStatus::kUnverified);
  EXPECT_EQ(verify_fact(fact("Y", "r", "Maida Vale"), p).status, VerdictStatus::kVerified);
  auto v = verify_fact(fact("Z", "r", "o"), p);
  EXPECT_EQ(v.status, VerdictStatus::kProviderError);
  EXPECT_EQ(v.error, "down");
}

TEST(VerifyFact, MonotoneInWindowSize) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vocab{"alpha", "beta", "gamma", "<b>", "</b>",
                                       "http://x.y", "delta", "Beta."};
  for (int round = 0; round < 300; ++round) {
    std::string snippet;
    for (int i = 0, n = static_cast<int>(rng() % 80); i < n; ++i) {
      snippet += vocab[rng() % vocab.size()] + " ";
    }
    ScriptedProvider p;
    p.snippets["s r"] = snippet;
    auto t = fact("s", "r", rng() % 2 ? "beta gamma" : "delta");
    if (verify_fact(t, p, 40).status == VerdictStatus::kVerified) {
      for (std::size_t n : {41u, 60u, 200u}) {
        EXPECT_EQ(verify_fact(t, p, n).status, VerdictStatus::kVerified);
      }
    }
  }
}

TEST(VerifyFact, CaseAndWhitespaceInvariant) {
  ScriptedProvider p;
  p.snippets["s r"] = "the Democratic Party won";
  for (const char* o : {"Democratic Party", "democratic party", "DEMOCRATIC   PARTY"}) {
    EXPECT_EQ(verify_fact(fact("s", "r", o), p).status, VerdictStatus::kVerified) << o;
  }
}

TEST(Evaluate, AggregatesAndExcludesProviderErrors) {
  KnowledgeGraph g(EntityName("s"));
  ScriptedProvider p;
  for (int i = 0; i < 12; ++i) {
    auto r = "r" + std::to_string(i);
    g.insert(fact("s", r, "o" + std::to_string(i), i < 6 ? 1 : 2));
    if (i < 5) p.snippets["s " + r] = "o" + std::to_string(i);
    if (i >= 10) p.broken.insert("s " + r);
  }
  auto report = evaluate_graph(g, p);
  EXPECT_EQ(report.overall.verified, 5u);
  EXPECT_EQ(report.overall.unverified, 5u);
  EXPECT_EQ(report.overall.provider_errors, 2u);
  EXPECT_DOUBLE_EQ(*report.precision(), 0.5);
  EXPECT_EQ(report.facts_count(), 5u);
  EXPECT_EQ(report.by_depth.at(1).verified, 5u);
  EXPECT_EQ(report.by_depth.at(2).verified, 0u);
  ASSERT_EQ(report.verdicts.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(report.verdicts[i].triplet, g.triplets()[i]);
  }
}

TEST(Evaluate, EmptyGraphHasUndefinedPrecision) {
  ScriptedProvider p;
  auto report = evaluate_graph(KnowledgeGraph(EntityName("s")), p);
  EXPECT_EQ(report.facts_count(), 0u);
  EXPECT_FALSE(report.precision());
  auto j = nlohmann::json::parse(report_to_json(report));
  EXPECT_TRUE(j["precision"].is_null());
}

TEST(Evaluate, HandLabeledCorpus) {
  auto g = load_graph_jsonl(test_data("eval/graph.jsonl"));
  auto provider = FixtureSnippetProvider::load(test_data("eval/corpus.jsonl"), true);
  auto report = evaluate_graph(g, provider);

  std::ifstream labels(test_data("eval/labels.tsv"));
  std::size_t i = 0;
  std::size_t verified = 0;
  for (std::string line; std::getline(labels, line); ++i) {
    const bool expect = line.substr(line.rfind('\t') + 1) == "verified";
    verified += expect;
    ASSERT_LT(i, report.verdicts.size());
    EXPECT_EQ(report.verdicts[i].status == VerdictStatus::kVerified, expect)
        << line << "\nwindow: " << report.verdicts[i].matched_window;
  }
  EXPECT_EQ(i, 30u);
  EXPECT_EQ(verified, 21u);
  EXPECT_DOUBLE_EQ(*report.precision(), 0.7);
  EXPECT_DOUBLE_EQ(*report.by_depth.at(1).precision(), 10.0 / 15.0);
  EXPECT_DOUBLE_EQ(*report.by_depth.at(2).precision(), 11.0 / 15.0);
}

TEST(Evaluate, StrictCorpusMissIsFatal) {
  FixtureSnippetProvider strict(true);
  KnowledgeGraph g(EntityName("s"));
  g.insert(fact("s", "r", "o"));
  EXPECT_THROW(evaluate_graph(g, strict), UnknownQueryError);
  FixtureSnippetProvider lenient(false);
  EXPECT_EQ(evaluate_graph(g, lenient).overall.unverified, 1u);
  EXPECT_THROW(strict.add("q", "a"); strict.add("q", "b"), std::invalid_argument);
}

TEST(Report, JsonSummaryRoundTrip) {
  auto g = load_graph_jsonl(test_data("eval/graph.jsonl"));
  auto provider = FixtureSnippetProvider::load(test_data("eval/corpus.jsonl"), true);
  auto report = evaluate_graph(g, provider);
  auto back = report_summary_from_json(report_to_json(report));
  EXPECT_EQ(back.seed, "Alan Turing");
  EXPECT_EQ(back.facts_count(), 21u);
  EXPECT_EQ(back.by_depth.at(2).unverified, 4u);
}

TEST(Pearson, PerfectFixturesAndErrors) {
  std::vector<double> x{1, 2, 3};
  EXPECT_DOUBLE_EQ(pearson_correlation(x, std::vector<double>{2, 4, 6}), 1.0);
  EXPECT_DOUBLE_EQ(pearson_correlation(x, std::vector<double>{3, 2, 1}), -1.0);
  EXPECT_THROW(pearson_correlation(x, std::vector<double>{1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(pearson_correlation(std::vector<double>{1}, std::vector<double>{1}),
               std::invalid_argument);
  EXPECT_THROW(pearson_correlation(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Pearson, MatchesDirectFormula) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 500.0);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 20; ++i) {
      xs.push_back(std::round(u(rng)));
      ys.push_back(0.3 * xs.back() + u(rng));
    }
    EXPECT_NEAR(pearson_correlation(xs, ys), oracle::pearson(xs, ys), 1e-12);
  }
}

TEST(Correlation, CsvRows) {
  std::ostringstream out;
  write_correlation_csv({{"Alan Turing", 21, 40}, {"Paris, France", 3, 9}}, out);
  EXPECT_EQ(out.str(),
            "seed,facts_count,reference_count\nAlan Turing,21,40\n\"Paris, France\",3,9\n");
}

}  // namespace
}  // namespace kgcrawl
