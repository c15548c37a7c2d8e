#include "ednce/isomorphism.hpp"

#include <algorithm>
#include <tuple>

namespace ednce {

namespace {

// Pattern nodes ordered most-constrained first, with the extra property that
// every node after the first in a component touches an earlier one. The
// backtracker then only scans host neighborhoods, not the whole host.
std::vector<NodeId> matching_order(const LabeledDigraph &pattern) {
  std::vector<NodeId> remaining;
  for (const auto &[id, label] : pattern.nodes()) remaining.push_back(id);
  auto rank = [&](const NodeId &n) {
    return std::make_tuple(
        pattern.in_edges(n).size() + pattern.out_edges(n).size(),
        pattern.node_label(n), n);
  };
  std::sort(remaining.begin(), remaining.end(),
            [&](const NodeId &a, const NodeId &b) {
              auto ra = rank(a), rb = rank(b);
              return std::get<0>(ra) > std::get<0>(rb) ||
                     (std::get<0>(ra) == std::get<0>(rb) &&
                      std::tie(std::get<1>(ra), std::get<2>(ra)) <
                          std::tie(std::get<1>(rb), std::get<2>(rb)));
            });
  std::vector<NodeId> order;
  std::set<NodeId> placed;
  while (!remaining.empty()) {
    auto it = std::find_if(remaining.begin(), remaining.end(),
                           [&](const NodeId &n) {
                             for (const NodeId &m : neighbors(pattern, n))
                               if (placed.count(m)) return true;
                             return false;
                           });
    if (it == remaining.end()) it = remaining.begin();  // new component
    order.push_back(*it);
    placed.insert(*it);
    remaining.erase(it);
  }
  return order;
}

bool pair_consistent(const LabeledDigraph &pattern, const LabeledDigraph &host,
                     const NodeId &p, const NodeId &c,
                     const std::map<NodeId, NodeId> &assigned) {
  for (const auto &[q, hq] : assigned) {
    if (pattern.edge_labels_between(p, q) != host.edge_labels_between(c, hq))
      return false;
    if (pattern.edge_labels_between(q, p) != host.edge_labels_between(hq, c))
      return false;
  }
  return true;
}

struct Search {
  const LabeledDigraph &pattern;
  const LabeledDigraph &host;
  const std::vector<NodeId> &order;
  std::size_t limit;
  std::map<NodeId, NodeId> assigned;
  std::set<NodeId> used;
  std::vector<std::map<NodeId, NodeId>> results;

  bool full() const { return limit != 0 && results.size() >= limit; }

  void extend(std::size_t depth) {
    if (full()) return;
    if (depth == order.size()) {
      results.push_back(assigned);
      return;
    }
    const NodeId &p = order[depth];
    // Prefer scanning the host neighborhood of an already-mapped neighbor.
    const NodeId *anchor = nullptr;
    for (const NodeId &q : neighbors(pattern, p)) {
      if (assigned.count(q)) {
        anchor = &assigned.at(q);
        break;
      }
    }
    std::set<NodeId> candidates;
    if (anchor != nullptr) {
      candidates = neighbors(host, *anchor);
    } else {
      for (const auto &[id, label] : host.nodes()) candidates.insert(id);
    }
    const std::size_t p_in = pattern.in_edges(p).size();
    const std::size_t p_out = pattern.out_edges(p).size();
    for (const NodeId &c : candidates) {
      if (used.count(c)) continue;
      if (host.node_label(c) != pattern.node_label(p)) continue;
      if (host.in_edges(c).size() < p_in) continue;
      if (host.out_edges(c).size() < p_out) continue;
      if (!pair_consistent(pattern, host, p, c, assigned)) continue;
      assigned[p] = c;
      used.insert(c);
      extend(depth + 1);
      used.erase(c);
      assigned.erase(p);
      if (full()) return;
    }
  }
};

}  // namespace

std::vector<std::map<NodeId, NodeId>> find_induced_embeddings(
    const LabeledDigraph &pattern, const LabeledDigraph &host,
    std::size_t limit) {
  if (pattern.node_count() > host.node_count()) return {};
  std::vector<NodeId> order = matching_order(pattern);
  Search search{pattern, host, order, limit, {}, {}, {}};
  search.extend(0);
  std::sort(search.results.begin(), search.results.end());
  return search.results;
}

bool has_induced_embedding(const LabeledDigraph &pattern,
                           const LabeledDigraph &host) {
  return !find_induced_embeddings(pattern, host, 1).empty();
}

bool is_isomorphic(const LabeledDigraph &a, const LabeledDigraph &b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  std::multiset<std::tuple<std::size_t, std::size_t, std::string>> da, db;
  for (const auto &[id, label] : a.nodes())
    da.insert({a.in_edges(id).size(), a.out_edges(id).size(), label});
  for (const auto &[id, label] : b.nodes())
    db.insert({b.in_edges(id).size(), b.out_edges(id).size(), label});
  if (da != db) return false;
  // With equal node and edge counts, an induced embedding is a bijection
  // matching every edge, which is exactly an isomorphism.
  return !find_induced_embeddings(a, b, 1).empty();
}

}  // namespace ednce
