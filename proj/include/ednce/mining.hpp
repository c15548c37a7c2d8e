#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ednce/canonical.hpp"
#include "ednce/graph.hpp"

namespace ednce {

struct Motif {
  // Connected node-induced pattern, nodes renamed "0".."k-1" canonically.
  LabeledDigraph pattern;
  CanonicalKey key;
  // Distinct admissible images in the host (see ground admissibility below).
  std::size_t support = 0;
  // support * (|pattern| - 1): the node savings if every admissible image
  // were contracted.
  std::size_t score = 0;
};

struct MineOptions {
  std::size_t beam_width = 4;
  std::size_t max_motif_size = 8;
  std::size_t top_n = 20;
  // Keep every candidate at every level instead of the beam. Exponential;
  // only sensible for oracle-sized inputs.
  bool exhaustive = false;
};

// Beam search over connected induced subgraphs of h, grown one neighbor at a
// time from single-node seeds. An image is admissible when its component
// either has no nonterminal node or the image covers all of them; support
// counts admissible images only, but inadmissible ones still drive growth
// since a larger image may absorb the nonterminal. Returns up to top_n
// motifs with support >= 2 and >= 2 nodes, ordered by score descending then
// canonical key ascending.
std::vector<Motif> mine_motifs(const LabeledDigraph &h,
                               const std::set<std::string> &nonterminal_labels,
                               const MineOptions &opts);

}  // namespace ednce
