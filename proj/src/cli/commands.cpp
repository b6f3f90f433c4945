// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgcrawl/checkpoint.hpp"
#include "kgcrawl/cli.hpp"
#include "kgcrawl/dk_bootstrap.hpp"
#include "kgcrawl/evaluation.hpp"
#include "kgcrawl/graph_io.hpp"
#include "kgcrawl/random.hpp"
#include "kgcrawl/reference_kb.hpp"

namespace kgcrawl::cli {

namespace {

namespace fs = std::filesystem;

/// Thrown for problems the user can fix by changing flags or files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& path, const std::string& what) {
  if (path.empty()) throw UsageError(what + " path is not set");
  if (!fs::is_regular_file(path)) {
    throw UsageError(what + " not found: " + path.string());
  }
}

// Flags shared by every command that may talk to a model. Unset optionals
// leave the config-file value alone.
struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> backend;
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<std::string> mock_script;
  bool mock_strict = false;
  std::optional<std::string> cache;
  std::optional<std::string> out_dir;
  std::optional<std::string> prompt_dir;
  std::optional<std::size_t> max_in_flight;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::string> reference_kb;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file");
    cmd->add_option("--backend", backend, "http | mock")
        ->check(CLI::IsMember({"http", "mock"}));
    cmd->add_option("--endpoint", endpoint, "completions endpoint URL");
    cmd->add_option("--model", model, "model name sent to the endpoint");
    cmd->add_option("--mock-script", mock_script, "JSON-lines mock fixtures");
    cmd->add_flag("--mock-strict", mock_strict,
                  "fail on prompts the mock script does not cover");
    cmd->add_option("--cache", cache, "response cache file (JSON-lines)");
    cmd->add_option("--out-dir", out_dir, "output directory");
    cmd->add_option("--prompt-dir", prompt_dir,
                    "directory holding the three prompt example files");
    cmd->add_option("--max-in-flight", max_in_flight,
                    "maximum concurrent model requests");
    cmd->add_option("--rng-seed", rng_seed, "seed for example sampling");
  }

  AppConfig resolve() const {
    AppConfig c = config ? AppConfig::from_json_file(*config) : AppConfig{};
    if (backend) c.backend.kind = *backend;
    if (endpoint) c.backend.endpoint = *endpoint;
    if (model) c.backend.model = *model;
    if (mock_script) c.backend.mock_script = *mock_script;
    if (mock_strict) c.backend.mock_strict = true;
    if (cache) c.cache_path = fs::path(*cache);
    if (out_dir) c.out_dir = *out_dir;
    if (prompt_dir) c.prompts = PromptPaths::in_dir(*prompt_dir);
    if (max_in_flight) c.crawl.max_in_flight = *max_in_flight;
    if (rng_seed) c.rng_seed = *rng_seed;
    if (reference_kb) c.reference_kb = *reference_kb;
    return c;
  }
};

void check_backend_inputs(const AppConfig& c) {
  if (c.backend.kind == "mock" && !c.backend.mock_script.empty()) {
    require_file(c.backend.mock_script, "mock script");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_metadata(const fs::path& path, const std::string& command,
                    const AppConfig& config, nlohmann::ordered_json extra) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = nlohmann::ordered_json::parse(config.to_json());
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_text(path, j.dump(2) + "\n");
}

std::map<int, std::size_t> depth_counts(const KnowledgeGraph& g) {
  std::map<int, std::size_t> counts;
  for (const auto& t : g.triplets()) ++counts[t.depth()];
  return counts;
}

// ---------------------------------------------------------------- crawl

struct CrawlFlags {
  CommonFlags common;
  std::string seed;
  std::optional<int> depth;
  bool no_dk = false;
  bool no_sp = false;
  bool no_rp = false;
  std::optional<std::string> decoding;
  std::optional<std::size_t> vote_threshold;
  std::optional<double> dedup_threshold;
  std::optional<std::size_t> max_relations;
  bool skip_literals = false;
  bool relation_votes_only = false;
  bool fresh = false;
};

int cmd_crawl(const CrawlFlags& f, std::ostream& out, std::ostream& err) {
  auto config = f.common.resolve();
  if (f.depth) config.crawl.max_depth = *f.depth;
  if (f.no_dk) config.crawl.use_dk = false;
  if (f.no_sp) config.crawl.use_subject_paraphrasing = false;
  if (f.no_rp) config.crawl.use_relation_paraphrasing = false;
  if (f.decoding) {
    config.crawl.decoding =
        *f.decoding == "greedy" ? Decoding::greedy() : Decoding::sampling();
  }
  if (f.vote_threshold) config.crawl.vote_threshold = *f.vote_threshold;
  if (f.dedup_threshold) config.crawl.dedup_threshold = *f.dedup_threshold;
  if (f.max_relations) config.crawl.max_relations_per_entity = *f.max_relations;
  if (f.skip_literals) config.crawl.skip_literal_objects = true;
  if (f.relation_votes_only) {
    config.crawl.votes_from_relation_realizations_only = true;
  }
  try {
    config.crawl.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  require_file(config.prompts.relation_generation, "relation-generation prompt");
  require_file(config.crawl.use_dk ? config.prompts.dk_object_generation
                                   : config.prompts.pure_object_generation,
               "object-generation prompt");
  check_backend_inputs(config);
  if (!is_valid_name(f.seed)) throw UsageError("invalid seed entity");

  PromptSet prompts;
  prompts.relation_generation = load_fixed_examples(config.prompts.relation_generation);
  if (config.crawl.use_dk) {
    prompts.dk_object_generation =
        load_fixed_examples(config.prompts.dk_object_generation);
  } else {
    prompts.pure_object_generation =
        load_fixed_examples(config.prompts.pure_object_generation);
  }

  fs::create_directories(config.out_dir);
  const auto checkpoint_path = config.out_dir / "checkpoint.jsonl";
  if (f.fresh) fs::remove(checkpoint_path);

  BackendStack backend(config);
  CrawlCheckpoint checkpoint(checkpoint_path);
  Crawler crawler(backend.model(), std::move(prompts), config.crawl,
                  [&err](const std::string& m) { err << "warning: " << m << '\n'; });

  KnowledgeGraph graph = [&] {
    try {
      return crawler.crawl(EntityName(f.seed), &checkpoint);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("crawl failed: ") + e.what() +
                               " (completed expansions kept in " +
                               checkpoint_path.string() + ")");
    }
  }();

  write_text(config.out_dir / "graph.jsonl", graph_to_jsonl(graph));
  write_text(config.out_dir / "graph.dot", graph_to_dot(graph));

  auto counts = depth_counts(graph);
  nlohmann::ordered_json by_depth = nlohmann::ordered_json::object();
  for (auto [d, n] : counts) by_depth[std::to_string(d)] = n;
  write_metadata(config.out_dir / "run_metadata.json", "crawl", config,
                 {{"seed", f.seed},
                  {"triplets", graph.size()},
                  {"entities", graph.entities().size()},
                  {"by_depth", by_depth}});

  out << "seed: " << graph.seed().text() << '\n';
  out << "triplets: " << graph.size() << '\n';
  for (auto [d, n] : counts) out << "depth " << d << ": " << n << '\n';
  out << "output: " << config.out_dir.string() << '\n';
  return 0;
}

// --------------------------------------------------------- bootstrap-dk

struct BootstrapFlags {
  CommonFlags common;
  std::optional<std::size_t> k_dk;
  std::size_t max_probes = 0;
  std::optional<std::string> output;
};

int cmd_bootstrap_dk(const BootstrapFlags& f, std::ostream& out,
                     std::ostream&) {
  auto config = f.common.resolve();
  if (f.k_dk) config.k_dk = *f.k_dk;
  if (config.k_dk == 0 || config.k_dk % 2 != 0) {
    throw UsageError("k_dk must be a positive even number, got " +
                     std::to_string(config.k_dk));
  }
  require_file(config.reference_kb, "reference KB");
  require_file(config.prompts.pure_object_generation, "pure object-generation prompt");
  check_backend_inputs(config);

  auto kb = load_reference_kb(config.reference_kb);
  if (kb.malformed_lines() > 0) {
    out << "reference KB: skipped " << kb.malformed_lines()
        << " malformed line(s)\n";
  }

  std::vector<std::size_t> chosen(kb.facts().size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (f.max_probes > 0 && f.max_probes < chosen.size()) {
    seeded_shuffle(chosen, config.rng_seed);
    chosen.resize(f.max_probes);
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto i : chosen) {
    pairs.emplace_back(kb.facts()[i].subject.text(), kb.facts()[i].relation.text());
  }

  BackendStack backend(config);
  ProbeOptions options{load_fixed_examples(config.prompts.pure_object_generation),
                       config.crawl.max_in_flight};
  auto results = probe(kb, backend.model(), pairs, options);

  std::size_t wrong = 0, correct = 0, abstained = 0, failed = 0;
  for (const auto& r : results) {
    if (r.error) ++failed;
    switch (r.verdict) {
      case ProbeVerdict::kWrong:
        ++wrong;
        break;
      case ProbeVerdict::kCorrect:
        ++correct;
        break;
      case ProbeVerdict::kAbstained:
        ++abstained;
        break;
    }
  }
  out << "probed: " << results.size() << "  wrong: " << wrong
      << "  correct: " << correct << "  abstained: " << abstained
      << "  backend errors: " << failed << '\n';

  auto examples = build_dk_examples(results, config.k_dk, config.rng_seed);

  fs::create_directories(config.out_dir);
  const fs::path output =
      f.output ? fs::path(*f.output) : config.out_dir / "dk_object_generation.txt";
  if (output.has_parent_path()) fs::create_directories(output.parent_path());
  save_fixed_examples(examples, output);
  write_metadata(config.out_dir / "run_metadata.json", "bootstrap-dk", config,
                 {{"probed", results.size()},
                  {"wrong", wrong},
                  {"correct", correct},
                  {"abstained", abstained},
                  {"output", output.string()}});
  out << "wrote " << examples.size() << " examples (" << config.k_dk / 2
      << " \"Don't know\") to " << output.string() << '\n';
  return 0;
}

// ------------------------------------------------------------- evaluate

struct EvaluateFlags {
  std::string graph;
  std::string corpus;
  std::string search_endpoint;
  bool lenient = false;
  std::optional<std::string> seed;
  std::optional<std::string> out_dir;
  std::size_t window = kWindowWords;
  std::size_t max_in_flight = 4;
};

std::string format_precision(const std::optional<double>& p) {
  if (!p) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << *p;
  return os.str();
}

int cmd_evaluate(const EvaluateFlags& f, std::ostream& out, std::ostream&) {
  require_file(f.graph, "graph");
  if (f.corpus.empty() == f.search_endpoint.empty()) {
    throw UsageError("give exactly one of --corpus and --search-endpoint");
  }
  auto graph = load_graph_jsonl(f.graph, f.seed);
  std::unique_ptr<SnippetProvider> provider;
  if (!f.corpus.empty()) {
    require_file(f.corpus, "snippet corpus");
    provider = std::make_unique<FixtureSnippetProvider>(
        FixtureSnippetProvider::load(f.corpus, !f.lenient));
  } else {
    provider = std::make_unique<HttpSnippetProvider>(f.search_endpoint);
  }
  auto report = evaluate_graph(graph, *provider, {f.window, f.max_in_flight});

  const fs::path out_dir = f.out_dir ? fs::path(*f.out_dir) : fs::path(".");
  fs::create_directories(out_dir);
  write_text(out_dir / "report.json", report_to_json(report) + "\n");

  out << "seed: " << report.seed << '\n';
  out << "precision: " << format_precision(report.precision()) << '\n';
  out << "facts_count: " << report.facts_count() << '\n';
  out << "provider_errors: " << report.overall.provider_errors << '\n';
  for (const auto& [d, t] : report.by_depth) {
    out << "depth " << d << ": precision " << format_precision(t.precision())
        << ", facts " << t.facts_count() << '\n';
  }
  return 0;
}

// --------------------------------------------------------------- export

struct ExportFlags {
  std::string graph;
  std::string format = "dot";
  std::optional<std::string> output;
  std::optional<std::string> seed;
};

int cmd_export(const ExportFlags& f, std::ostream& out, std::ostream&) {
  require_file(f.graph, "graph");
  if (f.format != "dot" && f.format != "jsonl") {
    throw UsageError("unknown export format \"" + f.format +
                     "\" (expected dot or jsonl)");
  }
  auto graph = load_graph_jsonl(f.graph, f.seed);
  auto text = f.format == "dot" ? graph_to_dot(graph) : graph_to_jsonl(graph);
  if (f.output) {
    write_text(*f.output, text);
  } else {
    out << text;
  }
  return 0;
}

// ---------------------------------------------------------------- stats

struct StatsFlags {
  std::vector<std::string> graphs;
  std::vector<std::string> reports;
  std::optional<std::string> reference_kb;
  std::optional<std::string> csv;
};

int cmd_stats(const StatsFlags& f, std::ostream& out, std::ostream&) {
  if (f.graphs.empty() && f.reports.empty()) {
    throw UsageError("stats needs --graph or --report");
  }
  for (const auto& path : f.graphs) {
    require_file(path, "graph");
    auto g = load_graph_jsonl(path);
    out << path << ": seed \"" << g.seed().text() << "\", " << g.size()
        << " triplets, " << g.entities().size() << " entities, "
        << g.relations().size() << " relations\n";
    for (auto [d, n] : depth_counts(g)) out << "  depth " << d << ": " << n << '\n';
  }
  if (f.reports.empty()) return 0;

  if (!f.reference_kb) throw UsageError("--report needs --reference-kb");
  require_file(*f.reference_kb, "reference KB");
  auto kb = load_reference_kb(*f.reference_kb);

  std::vector<CorrelationRow> rows;
  std::vector<double> xs, ys;
  for (const auto& path : f.reports) {
    require_file(path, "report");
    auto r = report_summary_from_json(read_text(path));
    rows.push_back({r.seed, r.facts_count(), kb.fact_count(r.seed)});
    xs.push_back(static_cast<double>(rows.back().facts_count));
    ys.push_back(static_cast<double>(rows.back().reference_count));
  }
  if (f.csv) {
    std::ofstream csv(*f.csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + *f.csv);
    write_correlation_csv(rows, csv);
  } else {
    write_correlation_csv(rows, out);
  }
  try {
    out << "pearson: " << std::fixed << std::setprecision(4)
        << pearson_correlation(xs, ys) << '\n';
  } catch (const std::invalid_argument& e) {
    out << "pearson: n/a (" << e.what() << ")\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Extract a knowledge graph from a language model by seed expansion",
               "kgcrawl"};
  app.require_subcommand(1);

  CrawlFlags crawl;
  auto* c = app.add_subcommand("crawl", "expand a seed entity into a graph");
  crawl.common.add_to(c);
  c->add_option("--seed", crawl.seed, "seed entity")->required();
  c->add_option("--depth", crawl.depth, "expansion hops (1 or 2)");
  c->add_flag("--no-dk", crawl.no_dk, "use pure object generation");
  c->add_flag("--no-sp", crawl.no_sp, "disable subject paraphrasing");
  c->add_flag("--no-rp", crawl.no_rp, "disable relation paraphrasing");
  c->add_option("--decoding", crawl.decoding, "greedy | sampling")
      ->check(CLI::IsMember({"greedy", "sampling"}));
  c->add_option("--vote-threshold", crawl.vote_threshold);
  c->add_option("--dedup-threshold", crawl.dedup_threshold);
  c->add_option("--max-relations", crawl.max_relations,
                "cap on relations per entity");
  c->add_flag("--skip-literals", crawl.skip_literals,
              "do not expand number/date objects");
  c->add_flag("--relation-votes-only", crawl.relation_votes_only,
              "count votes over relation realizations only");
  c->add_flag("--fresh", crawl.fresh, "discard an existing checkpoint");

  BootstrapFlags boot;
  auto* b = app.add_subcommand("bootstrap-dk",
                               "mine \"Don't know\" examples against a reference KB");
  boot.common.add_to(b);
  b->add_option("--reference-kb", boot.common.reference_kb, "TSV reference KB");
  b->add_option("--k-dk", boot.k_dk, "number of examples (even)");
  b->add_option("--max-probes", boot.max_probes,
                "probe at most this many KB pairs (0 = all)");
  b->add_option("--output", boot.output, "example file to write");

  EvaluateFlags eval;
  auto* e = app.add_subcommand("evaluate", "estimate precision with a snippet corpus");
  e->add_option("--graph", eval.graph, "graph JSON-lines")->required();
  e->add_option("--corpus", eval.corpus, "snippet corpus JSON-lines");
  e->add_option("--search-endpoint", eval.search_endpoint,
                "live search URL queried as GET ?q=<subject relation>");
  e->add_flag("--lenient", eval.lenient,
              "treat queries missing from the corpus as empty results");
  e->add_option("--seed", eval.seed, "seed entity (needed for empty graphs)");
  e->add_option("--out-dir", eval.out_dir, "where report.json is written");
  e->add_option("--window", eval.window, "words examined per snippet");
  e->add_option("--max-in-flight", eval.max_in_flight);

  ExportFlags exp;
  auto* x = app.add_subcommand("export", "render a graph as DOT or JSON-lines");
  x->add_option("--graph", exp.graph, "graph JSON-lines")->required();
  x->add_option("--format", exp.format, "dot | jsonl");
  x->add_option("--output", exp.output, "output file (default stdout)");
  x->add_option("--seed", exp.seed, "seed entity (needed for empty graphs)");

  StatsFlags stats;
  auto* s = app.add_subcommand("stats", "graph summaries and fact-count correlation");
  s->add_option("--graph", stats.graphs, "graph JSON-lines");
  s->add_option("--report", stats.reports, "evaluation report JSON");
  s->add_option("--reference-kb", stats.reference_kb, "TSV reference KB");
  s->add_option("--csv", stats.csv, "write correlation rows here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err) == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return cmd_crawl(crawl, out, err);
    if (b->parsed()) return cmd_bootstrap_dk(boot, out, err);
    if (e->parsed()) return cmd_evaluate(eval, out, err);
    if (x->parsed()) return cmd_export(exp, out, err);
    if (s->parsed()) return cmd_stats(stats, out, err);
  } catch (const UsageError& ue) {
    err << "error: " << ue.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace kgcrawl::cli
