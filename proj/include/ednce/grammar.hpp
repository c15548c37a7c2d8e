#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ednce/dataset.hpp"
#include "ednce/graph.hpp"
#include "ednce/rng.hpp"

namespace ednce {

enum class Direction { In, Out };

std::string to_string(Direction d);
Direction direction_from_string(const std::string &s);

// Connection directive attached to a rule. When the rule replaces node n,
// every neighbor y with node label sigma that was attached to n by a
// beta-labeled edge on side d (In means y -> n) receives a gamma-labeled
// edge to daughter node x; d_prime gives that new edge's direction (Out
// means y -> x).
struct Instruction {
  std::string sigma;
  std::string beta;
  std::string gamma;
  NodeId x;
  Direction d = Direction::In;
  Direction d_prime = Direction::In;

  auto operator<=>(const Instruction &) const = default;
};

struct Rule {
  int id = -1;
  std::string lhs;
  LabeledDigraph daughter;
  std::set<Instruction> instructions;
};

struct Grammar {
  LabelVocabulary labels;
  std::string start;
  std::vector<Rule> rules;

  const Rule &rule_by_id(int id) const;
  bool is_nonterminal(const std::string &label) const;
};

struct Parse {
  int graph_index = -1;
  std::vector<int> rule_ids;
};

// Structural well-formedness: unique rule ids, nonterminal lhs, daughters
// non-empty weakly connected with at most one nonterminal node, instructions
// referencing daughter nodes, every label drawn from the vocabulary. Throws
// InputError.
void validate_grammar(const Grammar &g);

struct ApplyResult {
  LabeledDigraph graph;
  // Daughter node id -> id it received in the result.
  std::map<NodeId, NodeId> placed;
};

// Replaces node n of h by rule.daughter, then reconnects the former
// neighborhood of n through the rule's instructions. Fresh node ids are
// fresh_prefix + daughter id; the caller guarantees these are unused.
ApplyResult apply_rule(const LabeledDigraph &h, const NodeId &n,
                       const Rule &rule, const std::string &fresh_prefix);

// Replays a rule sequence from the start symbol. Exactly one nonterminal
// node exists at every step; each rule must match its label. on_step, when
// set, sees every intermediate including the final graph. Throws InputError
// if the sequence does not apply cleanly or terminals remain unexpanded.
LabeledDigraph derive(
    const Grammar &g, const std::vector<int> &rule_ids,
    const std::function<void(const LabeledDigraph &)> &on_step = nullptr);

struct SampleOptions {
  // Hard cap on rule applications per attempt; recursion would otherwise let
  // an unlucky walk grow forever.
  std::size_t max_steps = 10000;
  // Extra admission predicate over each candidate intermediate. Applications
  // whose result it rejects are masked before the uniform draw.
  std::function<bool(const LabeledDigraph &)> admit;
};

struct SampleResult {
  LabeledDigraph graph;
  std::vector<int> rule_ids;
};

// Uniform choice among unmasked applicable rules at each step. Masking keeps
// every intermediate a weakly connected DAG. Throws BudgetError when no
// unmasked rule applies or max_steps is hit.
SampleResult sample(const Grammar &g, Rng &rng,
                    const SampleOptions &opts = {});

struct EnumerationOptions {
  std::size_t max_derivations = 10000;
  double timeout_seconds = 0;  // 0 = no limit
  bool use_memo = true;        // exposed so tests can show it never changes results
};

// All derivations of graphs isomorphic to target, in lexicographic rule-id
// order. Memoized DFS over intermediates keyed by CanonicalKey with an
// in-bucket isomorphism confirmation. Throws BudgetError on budget or
// timeout.
std::vector<std::vector<int>> enumerate_derivations(
    const Grammar &g, const LabeledDigraph &target,
    const EnumerationOptions &opts = {});

// Rank-ordered (rule id, count) over all parses, count descending then id
// ascending.
std::vector<std::pair<int, std::size_t>> token_frequency(
    const std::vector<Parse> &parses);

}  // namespace ednce
