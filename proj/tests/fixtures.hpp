#pragma once

#include "ednce/dataset.hpp"
#include "ednce/grammar.hpp"
#include "ednce/graph.hpp"

namespace ednce::fixtures {

// Three DAGs sharing a blue -> yellow edge with a green node attached to it
// from both sides (green -> yellow and blue -> green). Graphs 2 and 3 add a
// purple node on the green, wired in opposite directions, so the three
// graphs are pairwise non-isomorphic while the blue/yellow/green core
// repeats exactly.
DagDataset motif_conflict_dataset();

// The two-node pattern "1":blue -> "2":yellow over edge label "black".
LabeledDigraph motif_blue_yellow();

// Like the first conflict graph but with the green node's edge to the
// yellow node reversed (yellow -> green). Its contraction instructions
// clash with the originals: what one side must create the other must avoid.
LabeledDigraph reversed_conflict_graph();

// Disjoint union with node ids prefixed "0.", "1.", ... per graph.
LabeledDigraph compose(const DagDataset &data);

// Three identical three-node chains x -> y -> z.
DagDataset chains_dataset();

// Chain grammar building blocks. Rule 0 expands the start symbol into
// a -> N; the terminal rule closes N with a single c node, taking the
// incoming chain edge either way. chain_a_bs_c builds the matching target
// a -> b^bs -> c.
Rule chain_start_rule();
Rule chain_terminal_rule(int id);
LabeledDigraph chain_a_bs_c(std::size_t bs);

// Grammar with two interchangeable chain-extension rules (ids 1 and 2).
// The target a -> b -> b -> c has four derivations in two singleton
// rule-set groups plus one mixed group; eliminating one twin leaves
// exactly one derivation.
Grammar twin_rules_grammar();
LabeledDigraph twin_rules_target();

// Grammar that extends a chain by two or three b-nodes per step. The
// target a -> b -> b -> b -> b -> b -> c decomposes as 2+3 or 3+2: two
// derivations with identical rule sets, so no rule removal can separate
// them and the graph is unresolvable.
Grammar two_three_grammar();
LabeledDigraph two_three_target();

}  // namespace ednce::fixtures
