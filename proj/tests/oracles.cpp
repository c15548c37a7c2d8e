#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "ednce/errors.hpp"

namespace ednce::oracles {

bool isomorphic(const LabeledDigraph &a, const LabeledDigraph &b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  std::vector<NodeId> a_ids;
  for (const auto &[id, label] : a.nodes()) a_ids.push_back(id);
  std::vector<NodeId> image;
  std::set<NodeId> used;
  std::function<bool(std::size_t)> go = [&](std::size_t pos) -> bool {
    if (pos == a_ids.size()) return true;
    const NodeId &p = a_ids[pos];
    for (const auto &[b_id, b_label] : b.nodes()) {
      if (used.count(b_id)) continue;
      if (a.node_label(p) != b_label) continue;
      bool ok = true;
      for (std::size_t j = 0; j < pos && ok; ++j) {
        if (a.edge_labels_between(p, a_ids[j]) !=
                b.edge_labels_between(b_id, image[j]) ||
            a.edge_labels_between(a_ids[j], p) !=
                b.edge_labels_between(image[j], b_id))
          ok = false;
      }
      if (!ok) continue;
      image.push_back(b_id);
      used.insert(b_id);
      if (go(pos + 1)) return true;
      image.pop_back();
      used.erase(b_id);
    }
    return false;
  };
  return go(0);
}

std::vector<std::map<NodeId, NodeId>> induced_embeddings(
    const LabeledDigraph &pattern, const LabeledDigraph &host) {
  std::vector<NodeId> p_ids;
  for (const auto &[id, label] : pattern.nodes()) p_ids.push_back(id);
  std::vector<std::map<NodeId, NodeId>> out;
  std::vector<NodeId> image;
  std::set<NodeId> used;
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (pos == p_ids.size()) {
      std::map<NodeId, NodeId> m;
      for (std::size_t i = 0; i < p_ids.size(); ++i) m[p_ids[i]] = image[i];
      out.push_back(std::move(m));
      return;
    }
    const NodeId &p = p_ids[pos];
    for (const auto &[h_id, h_label] : host.nodes()) {
      if (used.count(h_id)) continue;
      if (pattern.node_label(p) != h_label) continue;
      bool ok = true;
      for (std::size_t j = 0; j < pos && ok; ++j) {
        if (pattern.edge_labels_between(p, p_ids[j]) !=
                host.edge_labels_between(h_id, image[j]) ||
            pattern.edge_labels_between(p_ids[j], p) !=
                host.edge_labels_between(image[j], h_id))
          ok = false;
      }
      if (!ok) continue;
      image.push_back(h_id);
      used.insert(h_id);
      go(pos + 1);
      image.pop_back();
      used.erase(h_id);
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> max_clique(
    const std::vector<std::set<std::size_t>> &adjacency) {
  const std::size_t n = adjacency.size();
  if (n > 22)
    throw InternalError("clique oracle refuses more than 22 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : adjacency[i]) adj[i] |= std::uint32_t{1} << j;
  std::vector<std::size_t> best;
  const std::uint32_t limit =
      n == 0 ? 1 : (std::uint32_t{1} << n);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    bool clique = true;
    for (std::size_t i = 0; i < n && clique; ++i) {
      if (!(mask & (std::uint32_t{1} << i))) continue;
      const std::uint32_t others = mask & ~(std::uint32_t{1} << i);
      if ((adj[i] & others) != others) clique = false;
    }
    if (!clique) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) members.push_back(i);
    if (members.size() > best.size() ||
        (members.size() == best.size() && members < best))
      best = std::move(members);
  }
  return best;
}

std::set<int> hitting_set(const std::vector<std::set<int>> &sets) {
  std::set<int> universe_set;
  for (const auto &s : sets) universe_set.insert(s.begin(), s.end());
  std::vector<int> universe(universe_set.begin(), universe_set.end());
  const std::size_t n = universe.size();
  if (n > 20)
    throw InternalError("hitting set oracle refuses universes above 20");
  std::optional<std::vector<int>> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<int> chosen;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) chosen.push_back(universe[i]);
    bool hits = true;
    for (const auto &s : sets) {
      bool any = false;
      for (int e : chosen)
        if (s.count(e)) {
          any = true;
          break;
        }
      if (!any) {
        hits = false;
        break;
      }
    }
    if (!hits) continue;
    if (!best.has_value() || chosen.size() < best->size() ||
        (chosen.size() == best->size() && chosen < *best))
      best = std::move(chosen);
  }
  if (!best.has_value())
    throw InternalError("no subset hits every set; an input set is empty");
  return {best->begin(), best->end()};
}

std::vector<std::vector<int>> derivations(const Grammar &g,
                                          const LabeledDigraph &target,
                                          std::size_t state_cap) {
  std::vector<std::vector<int>> found;
  std::size_t visited = 0;
  std::vector<int> seq;
  std::function<void(const LabeledDigraph &)> go =
      [&](const LabeledDigraph &h) {
        if (++visited > state_cap)
          throw BudgetError("derivation oracle exceeded its state cap");
        if (!is_dag(h) || !is_weakly_connected(h)) return;
        if (h.node_count() > target.node_count()) return;
        std::optional<NodeId> nt;
        for (const auto &[id, label] : h.nodes()) {
          if (!g.is_nonterminal(label)) continue;
          if (nt.has_value())
            throw InternalError("oracle state holds two nonterminals");
          nt = id;
        }
        if (!nt.has_value()) {
          if (isomorphic(h, target)) found.push_back(seq);
          return;
        }
        const std::string &lhs = h.node_label(*nt);
        for (const Rule &r : g.rules) {
          if (r.lhs != lhs) continue;
          seq.push_back(r.id);
          go(apply_rule(h, *nt, r, std::to_string(seq.size()) + ".").graph);
          seq.pop_back();
        }
      };
  LabeledDigraph axiom;
  axiom.add_node("s", g.start);
  go(axiom);
  std::sort(found.begin(), found.end());
  return found;
}

LabeledDigraph random_connected_dag(Rng &rng, std::size_t nodes,
                                    const std::vector<std::string> &labels,
                                    std::size_t label_count,
                                    const std::string &edge_label,
                                    std::uint64_t extra_edge_percent) {
  if (nodes == 0 || label_count == 0 || label_count > labels.size())
    throw InternalError("bad random_connected_dag arguments");
  LabeledDigraph g;
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < nodes; ++i) {
    ids.push_back("v" + std::to_string(i));
    g.add_node(ids.back(), labels[rng.below(label_count)]);
  }
  for (std::size_t i = 1; i < nodes; ++i)
    g.add_edge(ids[rng.below(i)], ids[i], edge_label);
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t j = i + 1; j < nodes; ++j) {
      if (g.has_edge(ids[i], ids[j], edge_label)) continue;
      if (rng.below(100) < extra_edge_percent)
        g.add_edge(ids[i], ids[j], edge_label);
    }
  return g;
}

DagDataset induction_corpus() {
  DagDataset data;
  data.labels.sigma = {"a", "b", "c", "d", "e"};
  data.labels.edge_labels = {"e"};
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 6 + rng.below(7);
    const std::size_t k = 3 + rng.below(3);
    data.graphs.push_back(
        random_connected_dag(rng, n, data.labels.sigma, k, "e", 25));
  }
  return data;
}

std::vector<std::set<std::size_t>> random_adjacency(Rng &rng, std::size_t n,
                                                    std::uint64_t percent) {
  std::vector<std::set<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.below(100) < percent) {
        adj[i].insert(j);
        adj[j].insert(i);
      }
  return adj;
}

std::vector<std::set<int>> random_hitting_instance(Rng &rng,
                                                   std::size_t universe,
                                                   std::size_t set_count) {
  if (universe == 0) throw InternalError("empty universe");
  std::vector<std::set<int>> sets(set_count);
  for (auto &s : sets) {
    const std::size_t want = 1 + rng.below(universe < 4 ? universe : 4);
    while (s.size() < want) s.insert(static_cast<int>(rng.below(universe)));
  }
  return sets;
}

std::pair<LabeledDigraph, LabeledDigraph> digest_collision_pair(
    std::size_t variant) {
  const std::vector<std::string> lab = {"x", "y", "z"};
  const std::string root = lab[variant % 3];
  const std::string mid = lab[(variant / 3) % 3];
  const std::string sink = lab[(variant / 9) % 3];
  const std::size_t tail = (variant / 27) % 5;

  LabeledDigraph shared;
  shared.add_node("r", root);
  shared.add_node("m1", mid);
  shared.add_node("m2", mid);
  shared.add_node("s", sink);
  shared.add_edge("r", "m1", "e");
  shared.add_edge("r", "m2", "e");
  shared.add_edge("m1", "s", "e");
  shared.add_edge("m2", "s", "e");
  NodeId prev = "s";
  for (std::size_t t = 0; t < tail; ++t) {
    const NodeId id = "t" + std::to_string(t);
    shared.add_node(id, lab[(variant + t) % 3]);
    shared.add_edge(prev, id, "e");
    prev = id;
  }

  LabeledDigraph split;
  split.add_node("r", root);
  split.add_node("m1", mid);
  split.add_node("m2", mid);
  split.add_node("s1", sink);
  split.add_node("s2", sink);
  split.add_edge("r", "m1", "e");
  split.add_edge("r", "m2", "e");
  split.add_edge("m1", "s1", "e");
  split.add_edge("m2", "s2", "e");
  for (const char *branch : {"s1", "s2"}) {
    NodeId p = branch;
    for (std::size_t t = 0; t < tail; ++t) {
      const NodeId id = std::string(branch) + "t" + std::to_string(t);
      split.add_node(id, lab[(variant + t) % 3]);
      split.add_edge(p, id, "e");
      p = id;
    }
  }
  return {shared, split};
}

}  // namespace ednce::oracles
