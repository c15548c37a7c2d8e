#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ednce/errors.hpp"
#include "ednce/grammar.hpp"
#include "ednce/graph.hpp"
#include "ednce/induction.hpp"
#include "ednce/io.hpp"
#include "ednce/isomorphism.hpp"
#include "ednce/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ednce {
namespace {

const std::vector<std::string> kXyz{"x", "y", "z"};

void expect_replays(const InductionResult &result, const DagDataset &data) {
  EXPECT_EQ(result.parses.size() + result.lost.size(), data.graphs.size());
  for (const Parse &p : result.parses) {
    ASSERT_GE(p.graph_index, 0);
    ASSERT_LT(static_cast<std::size_t>(p.graph_index), data.graphs.size());
    const LabeledDigraph replay = derive(result.grammar, p.rule_ids);
    EXPECT_TRUE(is_isomorphic(replay, data.graphs[p.graph_index]));
  }
}

TEST(Induction, SingleGraphGetsOneInitialRule) {
  DagDataset data;
  data.labels.sigma = {"x", "y", "z"};
  data.labels.edge_labels = {"e"};
  data.graphs.push_back(fixtures::chains_dataset().graphs[0]);

  const InductionResult result = induce_grammar(data, InductionConfig{});
  validate_grammar(result.grammar);
  // Nothing repeats inside one small chain, so no motif is mined: the whole
  // graph becomes one initial rule plus the start bridge.
  EXPECT_TRUE(result.trace.empty());
  EXPECT_EQ(result.grammar.rules.size(), 2u);
  EXPECT_TRUE(result.lost.empty());
  ASSERT_EQ(result.parses.size(), 1u);
  EXPECT_EQ(result.parses[0].rule_ids.size(), 2u);
  expect_replays(result, data);

  EXPECT_EQ(result.initial_size, 3u);
  EXPECT_EQ(result.pre_termination_size, 3u);
  EXPECT_EQ(result.post_termination_size, 1u);

  const auto derivs =
      enumerate_derivations(result.grammar, data.graphs[0], EnumerationOptions{});
  ASSERT_EQ(derivs.size(), 1u);
  EXPECT_EQ(derivs[0], result.parses[0].rule_ids);
}

TEST(Induction, IdenticalChainsShareOneParse) {
  const DagDataset data = fixtures::chains_dataset();
  const InductionResult result = induce_grammar(data, InductionConfig{});
  validate_grammar(result.grammar);
  EXPECT_TRUE(result.lost.empty());
  ASSERT_EQ(result.parses.size(), 3u);
  EXPECT_EQ(result.parses[0].rule_ids, result.parses[1].rule_ids);
  EXPECT_EQ(result.parses[1].rule_ids, result.parses[2].rule_ids);
  expect_replays(result, data);

  // 9 nodes in, one start node per graph out.
  EXPECT_EQ(result.initial_size, 9u);
  EXPECT_EQ(result.post_termination_size, 3u);
  ASSERT_EQ(result.iterations.size(), 1u);
  EXPECT_EQ(result.iterations[0].attempted.size(), 3u);
  EXPECT_EQ(result.iterations[0].retained.size(), 3u);

  for (const LabeledDigraph &g : data.graphs) {
    const auto derivs =
        enumerate_derivations(result.grammar, g, EnumerationOptions{});
    EXPECT_EQ(derivs.size(), 1u);
  }
}

TEST(Induction, IsomorphicDuplicatesParseIdentically) {
  DagDataset data;
  data.labels.sigma = {"x", "y", "z"};
  data.labels.edge_labels = {"e"};
  Rng rng(3);
  const LabeledDigraph base =
      oracles::random_connected_dag(rng, 6, kXyz, 3, "e", 30);
  data.graphs.push_back(base);
  LabeledDigraph renamed;
  for (const auto &[id, label] : base.nodes()) renamed.add_node("r" + id, label);
  for (const Edge &e : base.edges())
    renamed.add_edge("r" + e.src, "r" + e.dst, e.label);
  data.graphs.push_back(renamed);

  const InductionResult result = induce_grammar(data, InductionConfig{});
  EXPECT_TRUE(result.lost.empty());
  ASSERT_EQ(result.parses.size(), 2u);
  EXPECT_EQ(result.parses[0].rule_ids, result.parses[1].rule_ids);
  expect_replays(result, data);
}

TEST(Induction, TraceArithmeticHolds) {
  DagDataset data = fixtures::chains_dataset();
  // Larger corpus with repeated structure so several events fire.
  Rng rng(9);
  data.labels.sigma = {"x", "y", "z"};
  for (int i = 0; i < 6; ++i)
    data.graphs.push_back(
        oracles::random_connected_dag(rng, 5 + rng.below(3), kXyz, 3, "e", 25));

  const InductionResult result = induce_grammar(data, InductionConfig{});
  for (const TraceEvent &e : result.trace) {
    EXPECT_GE(e.clique_size, 1u);
    EXPECT_GE(e.motif_size, 2u);
    EXPECT_EQ(e.size_after, e.size_before - e.clique_size * (e.motif_size - 1));
    EXPECT_LT(e.size_after, e.size_before);
  }
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    if (result.trace[i].iteration != result.trace[i - 1].iteration) continue;
    EXPECT_EQ(result.trace[i].size_before, result.trace[i - 1].size_after);
  }
  expect_replays(result, data);
}

TEST(CompressionCurve, HandExamples) {
  EXPECT_EQ(compression_curve({}),
            (std::vector<std::pair<std::size_t, double>>{{0, 1.0}}));

  TraceEvent halve;
  halve.rule_id = 7;
  halve.size_before = 10;
  halve.size_after = 5;
  EXPECT_EQ(compression_curve({halve}),
            (std::vector<std::pair<std::size_t, double>>{{0, 1.0}, {1, 0.5}}));

  // Reusing a rule never advances the distinct-rule axis.
  TraceEvent again = halve;
  again.size_before = 5;
  again.size_after = 4;
  TraceEvent fresh;
  fresh.rule_id = 9;
  fresh.size_before = 4;
  fresh.size_after = 2;
  const auto curve = compression_curve({halve, again, fresh});
  ASSERT_EQ(curve.size(), 4u);
  EXPECT_EQ(curve[0], (std::pair<std::size_t, double>{0, 1.0}));
  EXPECT_EQ(curve[1], (std::pair<std::size_t, double>{1, 0.5}));
  EXPECT_EQ(curve[2], (std::pair<std::size_t, double>{1, 0.4}));
  EXPECT_EQ(curve[3], (std::pair<std::size_t, double>{2, 0.2}));
}

TEST(Induction, DeterministicAcrossRuns) {
  DagDataset data = fixtures::chains_dataset();
  Rng rng(17);
  data.graphs.push_back(
      oracles::random_connected_dag(rng, 7, kXyz, 3, "e", 30));

  InductionConfig cfg;
  cfg.seed = 42;
  const InductionResult a = induce_grammar(data, cfg);
  const InductionResult b = induce_grammar(data, cfg);

  const auto dir =
      std::filesystem::temp_directory_path() / "ednce_induction_determinism";
  std::filesystem::create_directories(dir);
  const std::string pa = (dir / "a.json").string();
  const std::string pb = (dir / "b.json").string();
  save_grammar(a.grammar, pa);
  save_grammar(b.grammar, pb);
  EXPECT_EQ(read_text_file(pa), read_text_file(pb));
  ASSERT_EQ(a.parses.size(), b.parses.size());
  for (std::size_t i = 0; i < a.parses.size(); ++i)
    EXPECT_EQ(a.parses[i].rule_ids, b.parses[i].rule_ids);
}

TEST(Induction, PartitionBySizeKeepsEveryGraph) {
  DagDataset data;
  data.labels.sigma = {"x", "y", "z"};
  data.labels.edge_labels = {"e"};
  Rng rng(21);
  for (int i = 0; i < 3; ++i)
    data.graphs.push_back(oracles::random_connected_dag(rng, 4, kXyz, 3, "e", 20));
  for (int i = 0; i < 3; ++i)
    data.graphs.push_back(oracles::random_connected_dag(rng, 9, kXyz, 3, "e", 20));

  InductionConfig cfg;
  cfg.partition_by = "size:4";
  const InductionResult result = induce_grammar(data, cfg);
  validate_grammar(result.grammar);
  expect_replays(result, data);
  EXPECT_TRUE(result.lost.empty());
  EXPECT_EQ(result.parses.size(), 6u);

  InductionConfig bad;
  bad.partition_by = "size:nope";
  EXPECT_THROW(induce_grammar(data, bad), InputError);
}

TEST(Induction, MaxItersZeroThrows) {
  InductionConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(induce_grammar(fixtures::chains_dataset(), cfg), BudgetError);
}

TEST(Induction, EmptyDatasetRejected) {
  DagDataset data;
  data.labels.sigma = {"x"};
  data.labels.edge_labels = {"e"};
  EXPECT_THROW(induce_grammar(data, InductionConfig{}), InputError);
}

TEST(Induction, ReservedNonterminalCollisionRejected) {
  DagDataset data = fixtures::chains_dataset();
  data.labels.nonterminals = {"gray:1"};
  EXPECT_THROW(induce_grammar(data, InductionConfig{}), InputError);
}

TEST(Induction, SkipDisambiguationKeepsAllGraphs) {
  const DagDataset data = fixtures::chains_dataset();
  InductionConfig cfg;
  cfg.skip_disambiguation = true;
  const InductionResult result = induce_grammar(data, cfg);
  EXPECT_TRUE(result.lost.empty());
  EXPECT_EQ(result.parses.size(), 3u);
  expect_replays(result, data);
}

TEST(Induction, PhaseTimesAreSane) {
  const InductionResult result =
      induce_grammar(fixtures::chains_dataset(), InductionConfig{});
  EXPECT_GE(result.times.mining_seconds, 0.0);
  EXPECT_GE(result.times.clique_seconds, 0.0);
  EXPECT_GE(result.times.contraction_seconds, 0.0);
  EXPECT_GE(result.times.enumeration_seconds, 0.0);
  EXPECT_GE(result.times.hitting_set_seconds, 0.0);
  EXPECT_GT(result.times.total_seconds, 0.0);
  const double parts = result.times.mining_seconds +
                       result.times.clique_seconds +
                       result.times.contraction_seconds +
                       result.times.enumeration_seconds +
                       result.times.hitting_set_seconds;
  EXPECT_LE(parts, result.times.total_seconds * 1.001 + 0.001);
}

}  // namespace
}  // namespace ednce
