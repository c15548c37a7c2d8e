#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ednce/graph.hpp"

namespace ednce {

// Structural fingerprint of a DAG. The digest alone can collide (a diamond
// and its unfolded tree serialize identically), so the key also carries the
// cheap exact counts that tell such pairs apart.
struct CanonicalKey {
  std::string digest;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  // Sorted (in-degree, out-degree, node label) triples.
  std::vector<std::tuple<std::size_t, std::size_t, std::string>>
      degree_signature;

  auto operator<=>(const CanonicalKey &) const = default;
  std::string to_string() const;
};

// Per-node color: the node's downward unfolding serialized as
//   label                                  for sinks
//   label "," edge:childcolor ...          otherwise, children sorted
// Shared subtrees are serialized once per occurrence, which is exactly what
// makes the diamond/tree collision above possible at the digest level.
// Requires a DAG.
std::map<NodeId, std::string> unfolding_colors(const LabeledDigraph &g);

// SHA-256 over the sorted source-node colors joined with "|".
std::string unfolding_digest(const LabeledDigraph &g);

CanonicalKey canonical_key(const LabeledDigraph &g);

std::string sha256_hex(const std::string &data);

// Renames nodes to "0".."n-1" ordered by (color, label, in-degree,
// out-degree, old id). Isomorphic inputs that differ only in node ids map to
// equal graphs whenever the color ordering is unambiguous.
LabeledDigraph relabel_canonically(const LabeledDigraph &g,
                                   std::map<NodeId, NodeId> *old_to_new = nullptr);

}  // namespace ednce
