#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ednce/cli.hpp"
#include "ednce/grammar.hpp"
#include "ednce/graph.hpp"
#include "ednce/io.hpp"
#include "ednce/isomorphism.hpp"
#include "fixtures.hpp"

namespace ednce {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ednce_cli_" +
            std::to_string(
                ::testing::UnitTest::GetInstance()->random_seed()) +
            "_" +
            ::testing::UnitTest::GetInstance()
                ->current_test_info()
                ->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string &name) const {
    return (dir_ / name).string();
  }

  std::string write_chains_dataset() {
    const std::string p = path("chains.json");
    save_dataset(fixtures::chains_dataset(), p);
    return p;
  }

  // Induces on the chains dataset into out_name and returns the directory.
  std::string induce_chains(const std::string &out_name,
                            std::vector<std::string> extra = {}) {
    const std::string dataset = write_chains_dataset();
    std::vector<std::string> args{"induce", dataset, "--out", path(out_name)};
    for (std::string &a : extra) args.push_back(std::move(a));
    EXPECT_EQ(cli::run(args), 0);
    return path(out_name);
  }

  fs::path dir_;
};

nlohmann::json read_json(const std::string &p) {
  std::ifstream in(p);
  nlohmann::json j;
  in >> j;
  return j;
}

std::vector<nlohmann::json> read_jsonl(const std::string &p) {
  std::ifstream in(p);
  std::vector<nlohmann::json> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

TEST_F(CliTest, InduceWritesAllArtifacts) {
  const std::string out = induce_chains("out");
  EXPECT_TRUE(fs::exists(fs::path(out) / "grammar.json"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "parses.jsonl"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "trace.csv"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "summary.json"));

  const auto summary = read_json((fs::path(out) / "summary.json").string());
  EXPECT_TRUE(summary.contains("iterations"));
  EXPECT_TRUE(summary.contains("config"));

  // The full triple passes the end-to-end validator.
  EXPECT_EQ(cli::run({"check", path("chains.json"),
                      (fs::path(out) / "grammar.json").string(),
                      (fs::path(out) / "parses.jsonl").string()}),
            0);
}

TEST_F(CliTest, InduceIsByteDeterministic) {
  const std::string a = induce_chains("a", {"--seed", "7"});
  const std::string dataset = path("chains.json");
  EXPECT_EQ(cli::run({"induce", dataset, "--out", path("b"), "--seed", "7"}),
            0);
  for (const std::string name : {"grammar.json", "parses.jsonl", "trace.csv"})
    EXPECT_EQ(read_text_file((fs::path(a) / name).string()),
              read_text_file((fs::path(path("b")) / name).string()))
        << name;
}

TEST_F(CliTest, JobsFlagDoesNotChangeOutputs) {
  const std::string a = induce_chains("j1", {"--jobs", "1"});
  EXPECT_EQ(cli::run({"induce", path("chains.json"), "--out", path("j4"),
                      "--jobs", "4"}),
            0);
  for (const std::string name : {"grammar.json", "parses.jsonl", "trace.csv"})
    EXPECT_EQ(read_text_file((fs::path(a) / name).string()),
              read_text_file((fs::path(path("j4")) / name).string()))
        << name;
}

TEST_F(CliTest, ParseReportsUniqueDerivations) {
  const std::string out = induce_chains("out");
  const std::string report = path("report.jsonl");
  EXPECT_EQ(cli::run({"parse", path("chains.json"),
                      (fs::path(out) / "grammar.json").string(), "--out",
                      report}),
            0);
  const auto rows = read_jsonl(report);
  const auto recorded =
      load_parses((fs::path(out) / "parses.jsonl").string());
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].at("graph_index").get<int>(), static_cast<int>(i));
    EXPECT_EQ(rows[i].at("derivation_count").get<int>(), 1);
    EXPECT_EQ(rows[i].at("rule_ids").get<std::vector<int>>(),
              recorded[i].rule_ids);
  }
}

TEST_F(CliTest, ParseCountsAmbiguousDerivations) {
  // A grammar whose two middle rules commute: the 5-link chain has exactly
  // two derivations, so it is reported ambiguous and gets no rule_ids.
  const Grammar g = fixtures::two_three_grammar();
  save_grammar(g, path("grammar.json"));
  DagDataset data;
  data.labels.sigma = {"a", "b", "c"};
  data.labels.edge_labels = {"e"};
  data.graphs.push_back(fixtures::two_three_target());
  save_dataset(data, path("amb.json"));

  const std::string report = path("amb.jsonl");
  EXPECT_EQ(cli::run({"parse", path("amb.json"), path("grammar.json"),
                      "--out", report}),
            0);
  const auto rows = read_jsonl(report);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("derivation_count").get<int>(), 2);
  EXPECT_FALSE(rows[0].contains("rule_ids"));
}

TEST_F(CliTest, DeriveRebuildsTheDataset) {
  const std::string out = induce_chains("out");
  const std::string rebuilt = path("rebuilt.json");
  EXPECT_EQ(cli::run({"derive", (fs::path(out) / "grammar.json").string(),
                      (fs::path(out) / "parses.jsonl").string(), "--out",
                      rebuilt}),
            0);
  const DagDataset original = load_dataset(path("chains.json"));
  const DagDataset replay = load_dataset(rebuilt);
  ASSERT_EQ(replay.graphs.size(), original.graphs.size());
  for (std::size_t i = 0; i < replay.graphs.size(); ++i)
    EXPECT_TRUE(is_isomorphic(replay.graphs[i], original.graphs[i]));
}

TEST_F(CliTest, SampleProducesValidGraphs) {
  save_grammar(fixtures::twin_rules_grammar(), path("grammar.json"));
  const std::string out = path("samples.json");
  EXPECT_EQ(cli::run({"sample", path("grammar.json"), "--out", out, "--n",
                      "5", "--seed", "9", "--max-nodes", "6"}),
            0);
  const auto j = read_json(out);
  EXPECT_FALSE(j.at("partial").get<bool>());
  ASSERT_EQ(j.at("graphs").size(), 5u);
  ASSERT_EQ(j.at("derivations").size(), 5u);
  for (const auto &gj : j.at("graphs")) {
    const LabeledDigraph g = graph_from_json(gj, "sample");
    EXPECT_LE(g.node_count(), 6u);
    EXPECT_TRUE(is_dag(g));
    EXPECT_TRUE(is_weakly_connected(g));
  }
  // Same seed, same file.
  const std::string out2 = path("samples2.json");
  EXPECT_EQ(cli::run({"sample", path("grammar.json"), "--out", out2, "--n",
                      "5", "--seed", "9", "--max-nodes", "6"}),
            0);
  EXPECT_EQ(read_text_file(out), read_text_file(out2));
}

TEST_F(CliTest, SampleStallsOnDeadEndGrammar) {
  Grammar dead;
  dead.labels.sigma = {"a", "b", "c"};
  dead.labels.nonterminals = {"S", "N"};
  dead.labels.edge_labels = {"e"};
  dead.labels.start = "S";
  dead.start = "S";
  dead.rules.push_back(fixtures::chain_start_rule());
  save_grammar(dead, path("dead.json"));
  const std::string out = path("samples.json");
  EXPECT_EQ(cli::run({"sample", path("dead.json"), "--out", out, "--n", "1",
                      "--retries", "2"}),
            3);
  EXPECT_TRUE(read_json(out).at("partial").get<bool>());
}

TEST_F(CliTest, StatsWritesFrequencyTables) {
  std::vector<Parse> parses;
  parses.push_back({0, {1, 2}});
  parses.push_back({1, {1, 3}});
  save_parses(parses, path("parses.jsonl"));
  EXPECT_EQ(cli::run({"stats", path("parses.jsonl"), "--out", path("stats")}),
            0);
  EXPECT_EQ(read_text_file(path("stats/token_frequency.csv")),
            "rule_id,count\n1,2\n2,1\n3,1\n");
  EXPECT_EQ(read_text_file(path("stats/parse_lengths.csv")),
            "length,count\n2,2\n");
}

TEST_F(CliTest, CheckCatchesCorruptedParses) {
  const std::string out = induce_chains("out");
  auto parses = load_parses((fs::path(out) / "parses.jsonl").string());
  ASSERT_FALSE(parses.empty());
  parses.pop_back();  // one graph now has no parse
  save_parses(parses, path("short.jsonl"));
  EXPECT_EQ(cli::run({"check", path("chains.json"),
                      (fs::path(out) / "grammar.json").string(),
                      path("short.jsonl")}),
            4);

  auto twisted = load_parses((fs::path(out) / "parses.jsonl").string());
  twisted[0].graph_index = 1;  // duplicate parse for one graph
  save_parses(twisted, path("dup.jsonl"));
  EXPECT_EQ(cli::run({"check", path("chains.json"),
                      (fs::path(out) / "grammar.json").string(),
                      path("dup.jsonl")}),
            4);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(cli::run({"induce", path("missing.json"), "--out", path("out")}),
            2);

  write_text_file(path("empty.json"),
                  "{\"labels\": {\"sigma\": [\"x\"], \"edge_labels\": "
                  "[\"e\"]}, \"graphs\": []}");
  EXPECT_EQ(cli::run({"induce", path("empty.json"), "--out", path("out")}),
            2);

  write_text_file(path("garbage.json"), "{ not json");
  EXPECT_EQ(cli::run({"induce", path("garbage.json"), "--out", path("out")}),
            2);

  const std::string dataset = write_chains_dataset();
  EXPECT_EQ(cli::run({"induce", dataset, "--out", path("out"),
                      "--clique-solver", "magic"}),
            2);
  EXPECT_EQ(cli::run({"induce", dataset, "--out", path("out"),
                      "--instruction-policy", "fancy"}),
            2);
  EXPECT_EQ(cli::run({"induce", dataset, "--no-such-flag"}), 2);
  EXPECT_EQ(cli::run({}), 2);
  EXPECT_EQ(cli::run({"frobnicate"}), 2);
}

TEST_F(CliTest, BudgetErrorsExitThree) {
  const std::string dataset = write_chains_dataset();
  EXPECT_EQ(cli::run({"induce", dataset, "--out", path("out"), "--max-iters",
                      "0"}),
            3);
}

TEST_F(CliTest, SolverAndPartitionFlagsWork) {
  const std::string out = induce_chains(
      "flags", {"--clique-solver", "greedy", "--hitting-set", "beam",
                "--partition-by", "size:3", "--skip-disambiguation"});
  EXPECT_EQ(cli::run({"check", path("chains.json"),
                      (fs::path(out) / "grammar.json").string(),
                      (fs::path(out) / "parses.jsonl").string()}),
            0);
}

}  // namespace
}  // namespace ednce
