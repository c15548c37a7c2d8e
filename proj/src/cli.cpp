#include "ednce/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include "ednce/errors.hpp"
#include "ednce/induction.hpp"
#include "ednce/io.hpp"
#include "ednce/isomorphism.hpp"

namespace ednce::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CommonEnumFlags {
  std::size_t max_derivations = 10000;
  double enum_timeout = 0;
  std::size_t jobs = 1;
};

void add_enum_flags(CLI::App *cmd, CommonEnumFlags &flags) {
  cmd->add_option("--max-derivations-per-graph", flags.max_derivations,
                  "Abort enumeration past this many derivations");
  cmd->add_option("--enum-timeout", flags.enum_timeout,
                  "Per-graph enumeration timeout in seconds (0 = none)");
  cmd->add_option("--jobs", flags.jobs, "Concurrent graphs in parallel maps");
}

// Deterministic bounded-width parallel map: results land in index order and
// at most `jobs` items run at once.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t jobs, Fn fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  for (std::size_t base = 0; base < n; base += jobs) {
    const std::size_t end = std::min(n, base + jobs);
    std::vector<std::future<Result>> wave;
    for (std::size_t i = base; i < end; ++i)
      wave.push_back(std::async(std::launch::async, [&fn, i] { return fn(i); }));
    for (std::size_t i = base; i < end; ++i)
      results[i] = wave[i - base].get();
  }
  return results;
}

ordered_json config_json(const InductionConfig &cfg) {
  ordered_json j;
  j["beam_width"] = cfg.beam_width;
  j["max_motif_size"] = cfg.max_motif_size;
  j["top_n"] = cfg.top_n;
  j["clique_solver"] = to_string(cfg.clique_solver);
  j["clique_exact_cap"] = cfg.clique_exact_cap;
  j["k_restarts"] = cfg.k_restarts;
  j["redirection_cap"] = cfg.redirection_cap;
  j["hitting_set"] = to_string(cfg.hitting_set);
  j["hs_beam_width"] = cfg.hs_beam_width;
  j["seed"] = cfg.seed;
  j["max_derivations_per_graph"] = cfg.max_derivations_per_graph;
  j["enum_timeout_seconds"] = cfg.enum_timeout_seconds;
  j["max_iters"] = cfg.max_iters;
  j["skip_disambiguation"] = cfg.skip_disambiguation;
  j["jobs"] = cfg.jobs;
  j["partition_by"] = cfg.partition_by;
  j["instruction_policy"] = cfg.instruction_policy;
  return j;
}

void write_trace_csv(const std::vector<TraceEvent> &trace,
                     const std::string &path) {
  std::ostringstream out;
  out << "iteration,step,rule_id,clique_size,motif_size,size_before,"
         "size_after\n";
  for (const TraceEvent &e : trace) {
    out << e.iteration << ',' << e.step << ',' << e.rule_id << ','
        << e.clique_size << ',' << e.motif_size << ',' << e.size_before << ','
        << e.size_after << '\n';
  }
  write_text_file(path, out.str());
}

void write_summary_json(const InductionResult &result,
                        const InductionConfig &cfg, const std::string &path) {
  ordered_json j;
  j["rule_count"] = result.grammar.rules.size();
  j["graph_count"] = result.parses.size() + result.lost.size();
  j["lost_count"] = result.lost.size();

  ordered_json compression;
  compression["initial_size"] = result.initial_size;
  compression["pre_termination_size"] = result.pre_termination_size;
  compression["post_termination_size"] = result.post_termination_size;
  const double initial = static_cast<double>(result.initial_size);
  compression["pre_termination_ratio"] =
      initial > 0 ? result.pre_termination_size / initial : 0.0;
  compression["post_termination_ratio"] =
      initial > 0 ? result.post_termination_size / initial : 0.0;
  j["compression"] = compression;

  std::map<std::size_t, std::size_t> histogram;
  for (const Parse &p : result.parses) ++histogram[p.rule_ids.size()];
  ordered_json lengths = ordered_json::array();
  for (const auto &[length, count] : histogram)
    lengths.push_back({{"length", length}, {"count", count}});
  j["parse_lengths"] = lengths;

  ordered_json phases;
  phases["mining_seconds"] = result.times.mining_seconds;
  phases["clique_seconds"] = result.times.clique_seconds;
  phases["contraction_seconds"] = result.times.contraction_seconds;
  phases["enumeration_seconds"] = result.times.enumeration_seconds;
  phases["hitting_set_seconds"] = result.times.hitting_set_seconds;
  phases["total_seconds"] = result.times.total_seconds;
  j["phase_seconds"] = phases;

  ordered_json iterations = ordered_json::array();
  for (const IterationReport &report : result.iterations) {
    ordered_json it;
    it["iteration"] = report.iteration;
    it["attempted"] = report.attempted;
    it["retained"] = report.retained;
    std::vector<TraceEvent> events;
    for (const TraceEvent &e : result.trace)
      if (e.iteration == report.iteration) events.push_back(e);
    ordered_json curve = ordered_json::array();
    for (const auto &[rules, ratio] : compression_curve(events))
      curve.push_back({rules, ratio});
    it["compression_curve"] = curve;
    iterations.push_back(it);
  }
  j["iterations"] = iterations;
  j["config"] = config_json(cfg);
  write_text_file(path, j.dump(2) + "\n");
}

int cmd_induce(const std::string &dataset_path, const std::string &out_dir,
               const InductionConfig &cfg) {
  const DagDataset data = load_dataset(dataset_path);
  const InductionResult result = induce_grammar(data, cfg);
  fs::create_directories(out_dir);
  save_grammar(result.grammar, (fs::path(out_dir) / "grammar.json").string());
  save_parses(result.parses, (fs::path(out_dir) / "parses.jsonl").string());
  write_trace_csv(result.trace, (fs::path(out_dir) / "trace.csv").string());
  write_summary_json(result, cfg,
                     (fs::path(out_dir) / "summary.json").string());
  std::cout << "induced " << result.grammar.rules.size() << " rules over "
            << result.parses.size() << " graphs ("
            << result.iterations.size() << " iterations)\n";
  return 0;
}

int cmd_parse(const std::string &dataset_path, const std::string &grammar_path,
              const std::string &out_path, const CommonEnumFlags &flags) {
  const DagDataset data = load_dataset(dataset_path);
  const Grammar grammar = load_grammar(grammar_path);
  EnumerationOptions opts;
  opts.max_derivations = flags.max_derivations;
  opts.timeout_seconds = flags.enum_timeout;
  const auto all = parallel_map(data.graphs.size(), flags.jobs,
                                [&](std::size_t i) {
                                  return enumerate_derivations(
                                      grammar, data.graphs[i], opts);
                                });
  std::ostringstream out;
  std::size_t unique_count = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    ordered_json row;
    row["graph_index"] = i;
    row["derivation_count"] = all[i].size();
    if (all[i].size() == 1) {
      row["rule_ids"] = all[i].front();
      ++unique_count;
    }
    out << row.dump() << '\n';
  }
  write_text_file(out_path, out.str());
  std::cout << unique_count << "/" << all.size()
            << " graphs have exactly one derivation\n";
  return 0;
}

int cmd_derive(const std::string &grammar_path, const std::string &parses_path,
               const std::string &out_path) {
  const Grammar grammar = load_grammar(grammar_path);
  const std::vector<Parse> parses = load_parses(parses_path);
  DagDataset data;
  data.labels.sigma = grammar.labels.sigma;
  data.labels.edge_labels = grammar.labels.edge_labels;
  data.labels.nonterminals = {grammar.start};
  data.labels.start = grammar.start;
  for (const Parse &p : parses) data.graphs.push_back(derive(grammar, p.rule_ids));
  save_dataset(data, out_path);
  std::cout << "derived " << data.graphs.size() << " graphs\n";
  return 0;
}

int cmd_sample(const std::string &grammar_path, const std::string &out_path,
               std::size_t count, std::uint64_t seed, std::size_t max_nodes,
               std::size_t max_steps, std::size_t retries) {
  const Grammar grammar = load_grammar(grammar_path);
  Rng rng(seed);
  SampleOptions opts;
  opts.max_steps = max_steps;
  if (max_nodes > 0)
    opts.admit = [max_nodes](const LabeledDigraph &g) {
      return g.node_count() <= max_nodes;
    };

  DagDataset data;
  data.labels.sigma = grammar.labels.sigma;
  data.labels.edge_labels = grammar.labels.edge_labels;
  data.labels.nonterminals = {grammar.start};
  data.labels.start = grammar.start;
  ordered_json derivations = ordered_json::array();
  bool partial = false;
  std::string failure;
  for (std::size_t i = 0; i < count; ++i) {
    bool produced = false;
    for (std::size_t attempt = 0; attempt <= retries && !produced; ++attempt) {
      try {
        SampleResult s = sample(grammar, rng, opts);
        data.graphs.push_back(std::move(s.graph));
        derivations.push_back(s.rule_ids);
        produced = true;
      } catch (const BudgetError &e) {
        failure = e.what();
      }
    }
    if (!produced) {
      partial = true;
      break;
    }
  }

  ordered_json j;
  j["labels"] = {{"sigma", data.labels.sigma},
                 {"nonterminals", data.labels.nonterminals},
                 {"edge_labels", data.labels.edge_labels},
                 {"start", data.labels.start}};
  ordered_json graphs = ordered_json::array();
  for (const LabeledDigraph &g : data.graphs) graphs.push_back(graph_to_json(g));
  j["graphs"] = graphs;
  j["derivations"] = derivations;
  j["partial"] = partial;
  write_text_file(out_path, j.dump(2) + "\n");
  if (partial) {
    std::cerr << "sampling stalled after " << retries
              << " retries: " << failure << "\n";
    std::cout << "sampled " << data.graphs.size() << "/" << count
              << " graphs (partial)\n";
    return 3;
  }
  std::cout << "sampled " << data.graphs.size() << " graphs\n";
  return 0;
}

int cmd_stats(const std::string &parses_path, const std::string &out_dir) {
  const std::vector<Parse> parses = load_parses(parses_path);
  std::ostringstream freq;
  freq << "rule_id,count\n";
  for (const auto &[rule, count] : token_frequency(parses))
    freq << rule << ',' << count << '\n';
  std::map<std::size_t, std::size_t> histogram;
  for (const Parse &p : parses) ++histogram[p.rule_ids.size()];
  std::ostringstream lengths;
  lengths << "length,count\n";
  for (const auto &[length, count] : histogram)
    lengths << length << ',' << count << '\n';
  if (out_dir.empty()) {
    std::cout << freq.str() << "\n" << lengths.str();
  } else {
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "token_frequency.csv").string(),
                    freq.str());
    write_text_file((fs::path(out_dir) / "parse_lengths.csv").string(),
                    lengths.str());
    std::cout << "wrote token_frequency.csv and parse_lengths.csv to "
              << out_dir << "\n";
  }
  return 0;
}

int cmd_check(const std::string &dataset_path, const std::string &grammar_path,
              const std::string &parses_path, const CommonEnumFlags &flags) {
  const DagDataset data = load_dataset(dataset_path);
  const Grammar grammar = load_grammar(grammar_path);
  const std::vector<Parse> parses = load_parses(parses_path);

  std::vector<std::string> violations;
  std::map<int, const Parse *> by_index;
  for (const Parse &p : parses) {
    if (p.graph_index < 0 ||
        static_cast<std::size_t>(p.graph_index) >= data.graphs.size()) {
      violations.push_back("parse references graph " +
                           std::to_string(p.graph_index) +
                           " outside the dataset");
      continue;
    }
    if (!by_index.emplace(p.graph_index, &p).second)
      violations.push_back("graph " + std::to_string(p.graph_index) +
                           " has more than one parse");
  }

  EnumerationOptions opts;
  opts.max_derivations = flags.max_derivations;
  opts.timeout_seconds = flags.enum_timeout;

  const auto reports = parallel_map(
      data.graphs.size(), flags.jobs,
      [&](std::size_t i) -> std::vector<std::string> {
        std::vector<std::string> local;
        const auto it = by_index.find(static_cast<int>(i));
        if (it == by_index.end()) {
          local.push_back("graph " + std::to_string(i) + " has no parse");
          return local;
        }
        LabeledDigraph replay;
        try {
          replay = derive(grammar, it->second->rule_ids);
        } catch (const std::exception &e) {
          local.push_back("graph " + std::to_string(i) +
                          ": parse does not replay: " + e.what());
          return local;
        }
        if (!is_isomorphic(replay, data.graphs[i]))
          local.push_back("graph " + std::to_string(i) +
                          ": replayed graph is not isomorphic to the input");
        const auto derivs = enumerate_derivations(grammar, data.graphs[i], opts);
        if (derivs.size() != 1)
          local.push_back("graph " + std::to_string(i) + " has " +
                          std::to_string(derivs.size()) +
                          " derivations, expected exactly 1");
        return local;
      });
  for (const auto &r : reports)
    violations.insert(violations.end(), r.begin(), r.end());

  if (!violations.empty()) {
    for (const std::string &v : violations) std::cerr << v << "\n";
    std::cerr << violations.size() << " invariant violations\n";
    return 4;
  }
  std::cout << "ok: " << data.graphs.size() << " graphs, "
            << grammar.rules.size() << " rules, all invariants hold\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string> &args) {
  CLI::App app{"Unambiguous graph grammar induction over labeled DAGs"};
  app.require_subcommand(1);

  // induce
  auto *induce = app.add_subcommand(
      "induce", "Induce a grammar from a dataset of labeled DAGs");
  std::string in_dataset;
  std::string induce_out = ".";
  InductionConfig cfg;
  std::string clique_solver = "exact";
  std::string hitting_set = "exact";
  induce->add_option("dataset", in_dataset, "Dataset JSON path")->required();
  induce->add_option("--out", induce_out,
                     "Directory for grammar.json, parses.jsonl, trace.csv, "
                     "summary.json");
  induce->add_option("--beam-width", cfg.beam_width, "Motif mining beam width");
  induce->add_option("--max-motif-size", cfg.max_motif_size,
                     "Largest motif node count");
  induce->add_option("--top-n", cfg.top_n, "Motifs scored per mining round");
  induce->add_option("--clique-solver", clique_solver,
                     "exact, approx or greedy");
  induce->add_option("--k-restarts", cfg.k_restarts,
                     "Restarts for the greedy clique solver");
  induce->add_option("--redirection-cap", cfg.redirection_cap,
                     "Max boundary size per contracted occurrence");
  induce->add_option("--hitting-set", hitting_set, "exact or beam");
  induce->add_option("--hs-beam-width", cfg.hs_beam_width,
                     "Beam width for the beam hitting set solver");
  induce->add_option("--seed", cfg.seed, "Root random seed");
  induce->add_option("--max-derivations-per-graph",
                     cfg.max_derivations_per_graph,
                     "Abort enumeration past this many derivations");
  induce->add_option("--enum-timeout", cfg.enum_timeout_seconds,
                     "Per-graph enumeration timeout in seconds (0 = none)");
  induce->add_option("--max-iters", cfg.max_iters,
                     "Iteration budget before giving up on unresolved graphs");
  induce->add_flag("--skip-disambiguation", cfg.skip_disambiguation,
                   "Keep every rule; parses may be ambiguous");
  induce->add_option("--jobs", cfg.jobs, "Concurrent graphs in parallel maps");
  induce->add_option("--partition-by", cfg.partition_by,
                     "none, or size:<k> to bucket graphs by node count");
  induce->add_option("--instruction-policy", cfg.instruction_policy,
                     "Reserved; only 'minimal' is implemented");

  // parse
  auto *parse = app.add_subcommand(
      "parse", "Enumerate derivations of each dataset graph under a grammar");
  std::string parse_dataset, parse_grammar;
  std::string parse_out = "parses.jsonl";
  CommonEnumFlags parse_flags;
  parse->add_option("dataset", parse_dataset, "Dataset JSON path")->required();
  parse->add_option("grammar", parse_grammar, "Grammar JSON path")->required();
  parse->add_option("--out", parse_out, "Output JSONL path");
  add_enum_flags(parse, parse_flags);

  // derive
  auto *derive_cmd = app.add_subcommand(
      "derive", "Replay parses into graphs and write them as a dataset");
  std::string derive_grammar, derive_parses;
  std::string derive_out = "derived.json";
  derive_cmd->add_option("grammar", derive_grammar, "Grammar JSON path")
      ->required();
  derive_cmd->add_option("parses", derive_parses, "Parses JSONL path")
      ->required();
  derive_cmd->add_option("--out", derive_out, "Output dataset JSON path");

  // sample
  auto *sample_cmd =
      app.add_subcommand("sample", "Sample graphs from a grammar");
  std::string sample_grammar;
  std::string sample_out = "samples.json";
  std::size_t sample_count = 1;
  std::uint64_t sample_seed = 0;
  std::size_t sample_max_nodes = 0;
  std::size_t sample_max_steps = 10000;
  std::size_t sample_retries = 100;
  sample_cmd->add_option("grammar", sample_grammar, "Grammar JSON path")
      ->required();
  sample_cmd->add_option("--out", sample_out, "Output JSON path");
  sample_cmd->add_option("--n", sample_count, "Number of samples");
  sample_cmd->add_option("--seed", sample_seed, "Random seed");
  sample_cmd->add_option("--max-nodes", sample_max_nodes,
                         "Node budget enforced during sampling (0 = none)");
  sample_cmd->add_option("--max-steps", sample_max_steps,
                         "Rule applications allowed per attempt");
  sample_cmd->add_option("--retries", sample_retries,
                         "Attempts per sample before giving up");

  // stats
  auto *stats = app.add_subcommand(
      "stats", "Token frequencies and parse lengths from a parses file");
  std::string stats_parses;
  std::string stats_out;
  stats->add_option("parses", stats_parses, "Parses JSONL path")->required();
  stats->add_option("--out", stats_out,
                    "Directory for CSV output (omit to print to stdout)");

  // check
  auto *check = app.add_subcommand(
      "check", "Validate a dataset/grammar/parses triple end to end");
  std::string check_dataset, check_grammar, check_parses;
  CommonEnumFlags check_flags;
  check->add_option("dataset", check_dataset, "Dataset JSON path")->required();
  check->add_option("grammar", check_grammar, "Grammar JSON path")->required();
  check->add_option("parses", check_parses, "Parses JSONL path")->required();
  add_enum_flags(check, check_flags);

  std::vector<const char *> argv;
  argv.push_back("ednce");
  for (const std::string &a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(induce)) {
      cfg.clique_solver = clique_solver_from_string(clique_solver);
      cfg.hitting_set = hitting_set_solver_from_string(hitting_set);
      if (cfg.instruction_policy != "minimal")
        throw InputError("instruction policy '" + cfg.instruction_policy +
                         "' is not implemented; use 'minimal'");
      return cmd_induce(in_dataset, induce_out, cfg);
    }
    if (app.got_subcommand(parse))
      return cmd_parse(parse_dataset, parse_grammar, parse_out, parse_flags);
    if (app.got_subcommand(derive_cmd))
      return cmd_derive(derive_grammar, derive_parses, derive_out);
    if (app.got_subcommand(sample_cmd))
      return cmd_sample(sample_grammar, sample_out, sample_count, sample_seed,
                        sample_max_nodes, sample_max_steps, sample_retries);
    if (app.got_subcommand(stats))
      return cmd_stats(stats_parses, stats_out);
    if (app.got_subcommand(check))
      return cmd_check(check_dataset, check_grammar, check_parses,
                       check_flags);
    return 2;
  } catch (const InputError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError &e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalError &e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace ednce::cli
