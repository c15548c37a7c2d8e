#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ednce/grammar.hpp"
#include "ednce/graph.hpp"
#include "ednce/rng.hpp"

namespace ednce {

struct Occurrence {
  std::map<NodeId, NodeId> embedding;  // pattern node -> host node
  std::set<NodeId> image;
  int component = -1;  // index into weakly_connected_components(h)
};

// One way of contracting one occurrence: each boundary neighbor keeps a
// single edge to the fresh nonterminal, on side `redirection` (In means
// neighbor -> nonterminal) with label `kept_label`. inset holds the
// instructions any rule must contain to rebuild the boundary edges from that
// state; outset holds the ones it must avoid, or extra edges appear.
struct Realization {
  std::size_t occurrence_index = 0;
  std::map<NodeId, Direction> redirection;
  std::map<NodeId, std::string> kept_label;
  std::set<Instruction> inset;
  std::set<Instruction> outset;
};

struct CompatInstance {
  std::vector<Occurrence> occurrences;
  std::vector<Realization> realizations;
  // Realization adjacency: jointly contractable pairs.
  std::vector<std::set<std::size_t>> adjacency;
};

// All node-induced embeddings of pattern in h, one Occurrence per distinct
// image, admissible ones only (component nonterminals covered by the image).
// Every returned image is re-checked against the pattern by isomorphism.
std::vector<Occurrence> ground_occurrences(
    const LabeledDigraph &pattern, const LabeledDigraph &h,
    const std::set<std::string> &nonterminal_labels);

// Valid redirection realizations of one occurrence. Assignments are
// enumerated over the boundary in lexicographic order (In before Out); a kept
// label is the smallest label among the neighbor's edges into the image.
// Assignments that would make the contracted component cyclic are rejected,
// first by the precedence relation (a path y' -> y outside the image forbids
// d_{y'} = Out with d_y = In), then by a direct acyclicity check on the
// contracted component. Out- and insets range over edge_label_universe for
// the created-edge label. Realizations whose inset intersects their outset
// are contradictory and dropped. Occurrences with more than max_boundary
// boundary neighbors yield no realizations.
std::vector<Realization> enumerate_redirections(
    const LabeledDigraph &h, const Occurrence &occ,
    std::size_t occurrence_index, std::size_t max_boundary,
    const std::vector<std::string> &edge_label_universe);

// Instance over all admissible occurrences of pattern. When
// required_instructions is set (rule reuse), only realizations reproducible
// by exactly that instruction set are kept: inset within the set, outset
// disjoint from it. Realizations are adjacent when their occurrences lie in
// different components and, for fresh rules, no instruction required by one
// is forbidden by the other.
CompatInstance build_compat_instance(
    const LabeledDigraph &h, const LabeledDigraph &pattern,
    const std::set<std::string> &nonterminal_labels, std::size_t max_boundary,
    const std::vector<std::string> &edge_label_universe,
    const std::set<Instruction> *required_instructions = nullptr);

enum class CliqueSolver { Exact, Approx, Greedy };

CliqueSolver clique_solver_from_string(const std::string &s);
std::string to_string(CliqueSolver s);

struct CliqueOptions {
  CliqueSolver solver = CliqueSolver::Exact;
  std::size_t exact_cap = 40;  // exact tier refuses larger instances
  std::size_t restarts = 10;   // greedy tier
};

// Vertex indices of a clique, sorted ascending. Exact returns a maximum
// clique, lexicographically smallest among maximums, and throws BudgetError
// above exact_cap. Approx and greedy return some valid clique. Every tier's
// output is verified pairwise before returning. rng is only consumed by the
// greedy tier.
std::vector<std::size_t> solve_max_clique(
    const std::vector<std::set<std::size_t>> &adjacency,
    const CliqueOptions &opts, Rng *rng);

// Union of the insets across the clique: the smallest instruction set that
// reconstructs every member's boundary.
std::set<Instruction> or_reduce(const CompatInstance &instance,
                                const std::vector<std::size_t> &clique);

// Collapses the occurrence image to a fresh node labeled nt_label, rewiring
// each boundary neighbor per the realization.
LabeledDigraph contract_occurrence(const LabeledDigraph &h,
                                   const Occurrence &occ,
                                   const Realization &realization,
                                   const std::string &nt_label,
                                   const NodeId &fresh_id);

}  // namespace ednce
