#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ednce {

using NodeId = std::string;

struct Edge {
  NodeId src;
  NodeId dst;
  std::string label;
  auto operator<=>(const Edge &) const = default;
};

// Node- and edge-labeled digraph. Parallel edges between the same ordered
// pair are allowed only with distinct labels. All containers are ordered so
// that iteration order is stable; every algorithm in this library leans on
// that for determinism instead of sorting at each use site.
class LabeledDigraph {
public:
  void add_node(const NodeId &id, const std::string &label);
  void add_edge(const NodeId &src, const NodeId &dst, const std::string &label);
  void remove_node(const NodeId &id);
  void remove_edge(const NodeId &src, const NodeId &dst,
                   const std::string &label);

  bool has_node(const NodeId &id) const { return labels_.count(id) != 0; }
  bool has_edge(const NodeId &src, const NodeId &dst,
                const std::string &label) const {
    return edges_.count(Edge{src, dst, label}) != 0;
  }
  const std::string &node_label(const NodeId &id) const;
  void set_node_label(const NodeId &id, const std::string &label);

  const std::map<NodeId, std::string> &nodes() const { return labels_; }
  const std::set<Edge> &edges() const { return edges_; }

  // Successors as (dst, edge label); predecessors as (src, edge label).
  const std::set<std::pair<NodeId, std::string>> &out_edges(
      const NodeId &id) const;
  const std::set<std::pair<NodeId, std::string>> &in_edges(
      const NodeId &id) const;

  // Labels of edges src -> dst, usually empty or a single element.
  std::set<std::string> edge_labels_between(const NodeId &src,
                                            const NodeId &dst) const;

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool operator==(const LabeledDigraph &other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

private:
  std::map<NodeId, std::string> labels_;
  std::set<Edge> edges_;
  std::map<NodeId, std::set<std::pair<NodeId, std::string>>> out_;
  std::map<NodeId, std::set<std::pair<NodeId, std::string>>> in_;
};

bool is_dag(const LabeledDigraph &g);
bool is_weakly_connected(const LabeledDigraph &g);

// Components sorted by their smallest node id.
std::vector<std::set<NodeId>> weakly_connected_components(
    const LabeledDigraph &g);

// Kahn's algorithm, smallest ready node first. Throws InputError on a cycle.
std::vector<NodeId> topological_order(const LabeledDigraph &g);

// Nodes with no incoming edges.
std::vector<NodeId> source_nodes(const LabeledDigraph &g);

// In- and out-neighbors combined, excluding the node itself.
std::set<NodeId> neighbors(const LabeledDigraph &g, const NodeId &id);

LabeledDigraph induced_subgraph(const LabeledDigraph &g,
                                const std::set<NodeId> &keep);

}  // namespace ednce
