#pragma once

#include <string>
#include <vector>

#include "ednce/graph.hpp"

namespace ednce {

// Node labels live in two disjoint namespaces: sigma for terminals and
// nonterminals for replacement symbols. Edge labels are a third namespace of
// their own, so an edge label may coincide with a node label.
struct LabelVocabulary {
  std::vector<std::string> sigma;
  std::vector<std::string> nonterminals;
  std::vector<std::string> edge_labels;
  std::string start;
};

struct DagDataset {
  LabelVocabulary labels;
  std::vector<LabeledDigraph> graphs;
};

// "black", "gray" and their iteration-tagged forms ("gray:3") are claimed by
// grammar construction and may not appear as terminal node labels.
bool is_reserved_node_label(const std::string &label);

// Checks vocabulary consistency and, per graph: labels drawn from sigma,
// weak connectivity, acyclicity, at least one node. Throws InputError naming
// the first offending graph.
void validate_dataset(const DagDataset &data);

}  // namespace ednce
