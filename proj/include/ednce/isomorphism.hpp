#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "ednce/graph.hpp"

namespace ednce {

// Exact isomorphism on labeled digraphs. Independent of CanonicalKey by
// design: the two act as cross-checks in tests, so this one must not consult
// the hash.
bool is_isomorphic(const LabeledDigraph &a, const LabeledDigraph &b);

// All node-induced embeddings pattern -> host, as pattern-id -> host-id maps
// in lexicographic order of the mapped pairs. Induced means the labeled edge
// set between every mapped pair matches the pattern exactly, including
// absences. The pattern may be disconnected. limit = 0 means unbounded;
// otherwise stop after that many embeddings.
std::vector<std::map<NodeId, NodeId>> find_induced_embeddings(
    const LabeledDigraph &pattern, const LabeledDigraph &host,
    std::size_t limit = 0);

bool has_induced_embedding(const LabeledDigraph &pattern,
                           const LabeledDigraph &host);

}  // namespace ednce
