#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ednce/compat.hpp"
#include "ednce/dataset.hpp"
#include "ednce/disambiguation.hpp"
#include "ednce/grammar.hpp"
#include "ednce/mining.hpp"

namespace ednce {

struct InductionConfig {
  std::size_t beam_width = 4;
  std::size_t max_motif_size = 8;
  std::size_t top_n = 20;
  CliqueSolver clique_solver = CliqueSolver::Exact;
  std::size_t clique_exact_cap = 40;
  std::size_t k_restarts = 10;
  std::size_t redirection_cap = 10;
  HittingSetSolver hitting_set = HittingSetSolver::Exact;
  std::size_t hs_beam_width = 10;
  std::uint64_t seed = 0;
  std::size_t max_derivations_per_graph = 10000;
  double enum_timeout_seconds = 0;
  std::size_t max_iters = 10;
  bool skip_disambiguation = false;
  std::size_t jobs = 1;
  // "none" or "size:<k>": bucket graphs by node count in bands of k and
  // induce per bucket. Buckets share nothing, so cross-bucket duplicates get
  // distinct rules and the one-derivation guarantee holds only per bucket's
  // rule universe.
  std::string partition_by = "none";
  // Reserved. "minimal" keeps each rule's instruction set at the union of
  // its founding insets.
  std::string instruction_policy = "minimal";
};

struct TraceEvent {
  int iteration = 0;
  int step = 0;
  int rule_id = -1;
  std::size_t clique_size = 0;
  std::size_t motif_size = 0;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct IterationReport {
  int iteration = 0;
  std::vector<int> attempted;  // dataset graph indices
  std::vector<int> retained;
  // Composite working graph at the moment compression stopped, kept so
  // callers can audit the stopping condition.
  LabeledDigraph final_composite;
  std::set<std::string> nonterminal_labels;
};

struct PhaseTimes {
  double mining_seconds = 0;
  double clique_seconds = 0;
  double contraction_seconds = 0;
  double enumeration_seconds = 0;
  double hitting_set_seconds = 0;
  double total_seconds = 0;
};

struct InductionResult {
  Grammar grammar;
  std::vector<Parse> parses;  // one per retained graph, graph_index ascending
  std::vector<int> lost;      // empty on success
  std::vector<TraceEvent> trace;
  std::vector<IterationReport> iterations;
  PhaseTimes times;
  // Elimination instances the run's hitting-set solver saw, in call order;
  // an audit trail for re-benchmarking solver tiers on the real workload.
  std::vector<std::vector<std::set<int>>> hitting_instances;
  std::size_t initial_size = 0;          // dataset nodes total
  std::size_t pre_termination_size = 0;  // composite nodes when compression stopped
  std::size_t post_termination_size = 0; // one start node per graph
};

// Normalized compression profile of one iteration's events: leading point
// (0, 1.0), then one point per event with x = distinct rules used so far and
// y = size_after / starting size.
std::vector<std::pair<std::size_t, double>> compression_curve(
    const std::vector<TraceEvent> &events);

// Full pipeline: per-iteration compression over the composite graph
// (exhaust rule reuse, then mine one motif, repeat while the composite
// shrinks), disambiguation, deferral of lost graphs to the next iteration,
// then bridge rules tying the global start symbol to each iteration's
// sub-grammar. Throws BudgetError when graphs remain after max_iters.
InductionResult induce_grammar(const DagDataset &data,
                               const InductionConfig &cfg);

}  // namespace ednce
