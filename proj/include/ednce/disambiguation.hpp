#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ednce/grammar.hpp"

namespace ednce {

enum class HittingSetSolver { Exact, Beam };

HittingSetSolver hitting_set_solver_from_string(const std::string &s);
std::string to_string(HittingSetSolver s);

bool is_hitting_set(const std::vector<std::set<int>> &sets,
                    const std::set<int> &candidate);

// Minimum-cardinality hitting set, lexicographically smallest among minimums.
// Throws InputError when some input set is empty (nothing can hit it) and
// BudgetError when the universe exceeds universe_cap.
std::set<int> exact_hitting_set(const std::vector<std::set<int>> &sets,
                                std::size_t universe_cap = 20);

// Beam search over partial hitting sets, layered by cardinality. Scoring is
// sets-hit descending then lexicographic, so on instances small enough for
// the beam to cover the frontier it returns the exact answer. Output is
// always a valid hitting set.
std::set<int> beam_hitting_set(const std::vector<std::set<int>> &sets,
                               std::size_t beam_width);

// Picks rule ids H such that every family contains at least one candidate
// set fully inside H, minimizing |H|. Exhaustive (cardinality then lex) when
// the combined universe is small, greedy otherwise; the greedy result is
// validated before returning. A family with an empty candidate set is
// satisfied by any H.
std::set<int> minimal_rule_set_selection(
    const std::vector<std::vector<std::set<int>>> &families);

struct DisambiguationStats {
  double enumeration_seconds = 0;
  double hitting_set_seconds = 0;
  // Every elimination instance handed to the hitting-set solver, in call
  // order; lets callers audit or re-benchmark the solver workload.
  std::vector<std::vector<std::set<int>>> instances;
};

struct DisambiguationOutcome {
  // Indices into the `graphs` argument.
  std::vector<int> retained;
  std::vector<int> lost;
  std::map<int, std::vector<int>> parse_by_graph;
  std::set<int> eliminated_rules;
};

// Removes a minimal rule set so every graph that can be unambiguous under
// the grammar keeps exactly one derivation; the rest are reported lost.
// recorded_parses, when non-empty, must appear among the enumerated
// derivations of their graphs (an internal cross-check on the caller's
// bookkeeping). The grammar is modified in place. The retained outcome is
// re-verified by a second enumeration over the pruned grammar.
DisambiguationOutcome disambiguate(
    Grammar &g, const std::vector<const LabeledDigraph *> &graphs,
    const std::map<int, std::vector<int>> &recorded_parses,
    const EnumerationOptions &enum_opts, HittingSetSolver solver,
    std::size_t hs_beam_width, std::size_t jobs,
    DisambiguationStats *stats = nullptr);

}  // namespace ednce
