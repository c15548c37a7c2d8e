#include "ednce/graph.hpp"

#include <deque>

#include "ednce/errors.hpp"

namespace ednce {

namespace {

const std::set<std::pair<NodeId, std::string>> &empty_edge_set() {
  static const std::set<std::pair<NodeId, std::string>> empty;
  return empty;
}

}  // namespace

void LabeledDigraph::add_node(const NodeId &id, const std::string &label) {
  if (labels_.count(id))
    throw InputError("duplicate node id '" + id + "'");
  labels_[id] = label;
}

void LabeledDigraph::add_edge(const NodeId &src, const NodeId &dst,
                              const std::string &label) {
  if (!labels_.count(src))
    throw InputError("edge endpoint '" + src + "' is not a node");
  if (!labels_.count(dst))
    throw InputError("edge endpoint '" + dst + "' is not a node");
  Edge e{src, dst, label};
  if (edges_.count(e))
    throw InputError("duplicate edge " + src + " -> " + dst + " ('" + label +
                     "')");
  edges_.insert(e);
  out_[src].insert({dst, label});
  in_[dst].insert({src, label});
}

void LabeledDigraph::remove_node(const NodeId &id) {
  if (!labels_.count(id))
    throw InputError("cannot remove unknown node '" + id + "'");
  // Copies: removal mutates the adjacency sets being walked.
  auto outgoing = out_edges(id);
  for (const auto &[dst, label] : outgoing) remove_edge(id, dst, label);
  auto incoming = in_edges(id);
  for (const auto &[src, label] : incoming) remove_edge(src, id, label);
  labels_.erase(id);
  out_.erase(id);
  in_.erase(id);
}

void LabeledDigraph::remove_edge(const NodeId &src, const NodeId &dst,
                                 const std::string &label) {
  Edge e{src, dst, label};
  if (!edges_.count(e))
    throw InputError("cannot remove unknown edge " + src + " -> " + dst);
  edges_.erase(e);
  out_[src].erase({dst, label});
  in_[dst].erase({src, label});
}

const std::string &LabeledDigraph::node_label(const NodeId &id) const {
  auto it = labels_.find(id);
  if (it == labels_.end())
    throw InputError("unknown node '" + id + "'");
  return it->second;
}

void LabeledDigraph::set_node_label(const NodeId &id,
                                    const std::string &label) {
  auto it = labels_.find(id);
  if (it == labels_.end())
    throw InputError("unknown node '" + id + "'");
  it->second = label;
}

const std::set<std::pair<NodeId, std::string>> &LabeledDigraph::out_edges(
    const NodeId &id) const {
  auto it = out_.find(id);
  return it == out_.end() ? empty_edge_set() : it->second;
}

const std::set<std::pair<NodeId, std::string>> &LabeledDigraph::in_edges(
    const NodeId &id) const {
  auto it = in_.find(id);
  return it == in_.end() ? empty_edge_set() : it->second;
}

std::set<std::string> LabeledDigraph::edge_labels_between(
    const NodeId &src, const NodeId &dst) const {
  std::set<std::string> labels;
  for (const auto &[d, label] : out_edges(src))
    if (d == dst) labels.insert(label);
  return labels;
}

bool is_dag(const LabeledDigraph &g) {
  // Kahn's algorithm; leftovers mean a cycle.
  std::map<NodeId, std::size_t> indegree;
  for (const auto &[id, label] : g.nodes()) indegree[id] = g.in_edges(id).size();
  std::deque<NodeId> ready;
  for (const auto &[id, deg] : indegree)
    if (deg == 0) ready.push_back(id);
  std::size_t seen = 0;
  while (!ready.empty()) {
    NodeId n = ready.front();
    ready.pop_front();
    ++seen;
    std::set<NodeId> successors;
    for (const auto &[dst, label] : g.out_edges(n)) successors.insert(dst);
    for (const NodeId &dst : successors) {
      // Parallel edges with distinct labels each contribute to the indegree.
      std::size_t parallel = g.edge_labels_between(n, dst).size();
      indegree[dst] -= parallel;
      if (indegree[dst] == 0) ready.push_back(dst);
    }
  }
  return seen == g.node_count();
}

bool is_weakly_connected(const LabeledDigraph &g) {
  return weakly_connected_components(g).size() <= 1;
}

std::vector<std::set<NodeId>> weakly_connected_components(
    const LabeledDigraph &g) {
  std::vector<std::set<NodeId>> components;
  std::set<NodeId> unvisited;
  for (const auto &[id, label] : g.nodes()) unvisited.insert(id);
  while (!unvisited.empty()) {
    NodeId seed = *unvisited.begin();
    std::set<NodeId> component;
    std::deque<NodeId> frontier{seed};
    unvisited.erase(seed);
    component.insert(seed);
    while (!frontier.empty()) {
      NodeId n = frontier.front();
      frontier.pop_front();
      for (const NodeId &m : neighbors(g, n)) {
        if (unvisited.erase(m)) {
          component.insert(m);
          frontier.push_back(m);
        }
      }
    }
    components.push_back(std::move(component));
  }
  return components;
}

std::vector<NodeId> topological_order(const LabeledDigraph &g) {
  std::map<NodeId, std::size_t> indegree;
  for (const auto &[id, label] : g.nodes()) indegree[id] = g.in_edges(id).size();
  std::set<NodeId> ready;
  for (const auto &[id, deg] : indegree)
    if (deg == 0) ready.insert(id);
  std::vector<NodeId> order;
  order.reserve(g.node_count());
  while (!ready.empty()) {
    NodeId n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    std::set<NodeId> successors;
    for (const auto &[dst, label] : g.out_edges(n)) successors.insert(dst);
    for (const NodeId &dst : successors) {
      indegree[dst] -= g.edge_labels_between(n, dst).size();
      if (indegree[dst] == 0) ready.insert(dst);
    }
  }
  if (order.size() != g.node_count())
    throw InputError("graph has a cycle, no topological order exists");
  return order;
}

std::vector<NodeId> source_nodes(const LabeledDigraph &g) {
  std::vector<NodeId> sources;
  for (const auto &[id, label] : g.nodes())
    if (g.in_edges(id).empty()) sources.push_back(id);
  return sources;
}

std::set<NodeId> neighbors(const LabeledDigraph &g, const NodeId &id) {
  std::set<NodeId> result;
  for (const auto &[dst, label] : g.out_edges(id)) result.insert(dst);
  for (const auto &[src, label] : g.in_edges(id)) result.insert(src);
  result.erase(id);
  return result;
}

LabeledDigraph induced_subgraph(const LabeledDigraph &g,
                                const std::set<NodeId> &keep) {
  LabeledDigraph sub;
  for (const NodeId &id : keep) sub.add_node(id, g.node_label(id));
  for (const Edge &e : g.edges())
    if (keep.count(e.src) && keep.count(e.dst))
      sub.add_edge(e.src, e.dst, e.label);
  return sub;
}

}  // namespace ednce
