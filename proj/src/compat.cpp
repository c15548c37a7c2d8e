#include "ednce/compat.hpp"

#include <algorithm>
#include <deque>

#include "ednce/errors.hpp"
#include "ednce/isomorphism.hpp"

namespace ednce {

std::vector<Occurrence> ground_occurrences(
    const LabeledDigraph &pattern, const LabeledDigraph &h,
    const std::set<std::string> &nonterminal_labels) {
  auto components = weakly_connected_components(h);
  std::map<NodeId, int> comp_of;
  std::vector<std::set<NodeId>> comp_nts(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const NodeId &n : components[c]) {
      comp_of[n] = static_cast<int>(c);
      if (nonterminal_labels.count(h.node_label(n))) comp_nts[c].insert(n);
    }
  }

  // One occurrence per distinct image; the lexicographically first embedding
  // stands in for the image's automorphic variants.
  std::map<std::set<NodeId>, std::map<NodeId, NodeId>> by_image;
  for (const auto &embedding : find_induced_embeddings(pattern, h)) {
    std::set<NodeId> image;
    for (const auto &[p, n] : embedding) image.insert(n);
    by_image.emplace(std::move(image), embedding);
  }

  std::vector<Occurrence> occurrences;
  for (const auto &[image, embedding] : by_image) {
    const int comp = comp_of.at(*image.begin());
    bool covers = true;
    for (const NodeId &nt : comp_nts[comp])
      if (!image.count(nt)) {
        covers = false;
        break;
      }
    if (!covers) continue;  // a nonterminal outside the image blocks contraction
    if (!is_isomorphic(induced_subgraph(h, image), pattern))
      throw InternalError("grounded image is not isomorphic to its pattern");
    occurrences.push_back(Occurrence{embedding, image, comp});
  }
  return occurrences;
}

namespace {

// Nodes of the weakly connected component containing `seed_set`.
std::set<NodeId> component_nodes(const LabeledDigraph &h,
                                 const std::set<NodeId> &seed_set) {
  std::set<NodeId> visited = seed_set;
  std::deque<NodeId> frontier(seed_set.begin(), seed_set.end());
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop_front();
    for (const NodeId &m : neighbors(h, n))
      if (visited.insert(m).second) frontier.push_back(m);
  }
  return visited;
}

// reach[a] = boundary nodes reachable from a by directed paths that avoid
// the image entirely.
std::map<NodeId, std::set<NodeId>> boundary_reachability(
    const LabeledDigraph &comp, const std::set<NodeId> &image,
    const std::vector<NodeId> &boundary) {
  std::set<NodeId> boundary_set(boundary.begin(), boundary.end());
  std::map<NodeId, std::set<NodeId>> reach;
  for (const NodeId &start : boundary) {
    std::set<NodeId> visited{start};
    std::deque<NodeId> frontier{start};
    while (!frontier.empty()) {
      NodeId n = frontier.front();
      frontier.pop_front();
      for (const auto &[dst, label] : comp.out_edges(n)) {
        if (image.count(dst)) continue;
        if (visited.insert(dst).second) frontier.push_back(dst);
      }
    }
    visited.erase(start);
    for (const NodeId &v : visited)
      if (boundary_set.count(v)) reach[start].insert(v);
  }
  return reach;
}

}  // namespace

LabeledDigraph contract_occurrence(const LabeledDigraph &h,
                                   const Occurrence &occ,
                                   const Realization &realization,
                                   const std::string &nt_label,
                                   const NodeId &fresh_id) {
  LabeledDigraph out = h;
  for (const NodeId &n : occ.image) out.remove_node(n);
  out.add_node(fresh_id, nt_label);
  for (const auto &[y, d] : realization.redirection) {
    const std::string &beta = realization.kept_label.at(y);
    if (d == Direction::In)
      out.add_edge(y, fresh_id, beta);
    else
      out.add_edge(fresh_id, y, beta);
  }
  return out;
}

std::vector<Realization> enumerate_redirections(
    const LabeledDigraph &h, const Occurrence &occ,
    std::size_t occurrence_index, std::size_t max_boundary,
    const std::vector<std::string> &edge_label_universe) {
  // Boundary neighbors in id order; assignments enumerate In before Out per
  // position, most significant first, which is lexicographic order.
  std::set<NodeId> boundary_set;
  for (const NodeId &n : occ.image)
    for (const NodeId &m : neighbors(h, n))
      if (!occ.image.count(m)) boundary_set.insert(m);
  std::vector<NodeId> boundary(boundary_set.begin(), boundary_set.end());
  if (boundary.size() > max_boundary) return {};

  std::set<NodeId> comp_ids = component_nodes(h, occ.image);
  LabeledDigraph comp = induced_subgraph(h, comp_ids);
  auto reach = boundary_reachability(comp, occ.image, boundary);

  // The lexicographically smallest label attaching the neighbor to the
  // image; the one edge the contraction keeps.
  std::map<NodeId, std::string> kept;
  for (const NodeId &y : boundary) {
    std::set<std::string> labels;
    for (const NodeId &n : occ.image) {
      for (const std::string &l : h.edge_labels_between(y, n)) labels.insert(l);
      for (const std::string &l : h.edge_labels_between(n, y)) labels.insert(l);
    }
    kept[y] = *labels.begin();
  }

  std::vector<Realization> realizations;
  const std::size_t b = boundary.size();
  const std::size_t assignments = static_cast<std::size_t>(1) << b;
  for (std::size_t mask = 0; mask < assignments; ++mask) {
    Realization r;
    r.occurrence_index = occurrence_index;
    r.kept_label = kept;
    for (std::size_t i = 0; i < b; ++i) {
      const bool out_side = (mask >> (b - 1 - i)) & 1;
      r.redirection[boundary[i]] = out_side ? Direction::Out : Direction::In;
    }

    // A directed path y1 -> y2 around the image plus edges nt -> y1 and
    // y2 -> nt would close a cycle through the contracted node.
    bool acyclic = true;
    for (const NodeId &y1 : boundary) {
      if (r.redirection[y1] != Direction::Out) continue;
      auto it = reach.find(y1);
      if (it == reach.end()) continue;
      for (const NodeId &y2 : it->second) {
        if (r.redirection[y2] == Direction::In) {
          acyclic = false;
          break;
        }
      }
      if (!acyclic) break;
    }
    if (!acyclic) continue;
    // The precedence relation should be exact on DAG inputs, but the direct
    // check below is the arbiter either way.
    NodeId probe_id = "nt_probe";
    while (comp.has_node(probe_id)) probe_id += "_";
    LabeledDigraph contracted =
        contract_occurrence(comp, occ, r, "nt_probe_label", probe_id);
    if (!is_dag(contracted) || !is_weakly_connected(contracted)) continue;

    // Bounds on the owning rule's instruction set. Every actual edge between
    // the neighbor and the image must be recreated from the kept edge
    // (inset); any other instruction firing on the same precondition would
    // invent an edge (outset).
    bool contradictory = false;
    for (const NodeId &y : boundary) {
      const std::string &sigma = h.node_label(y);
      const std::string &beta = kept.at(y);
      const Direction d = r.redirection.at(y);
      for (const auto &[x, ximg] : occ.embedding) {
        for (const std::string &gamma : edge_label_universe) {
          Instruction to_daughter{sigma, beta, gamma, x, d, Direction::Out};
          if (h.has_edge(y, ximg, gamma))
            r.inset.insert(to_daughter);
          else
            r.outset.insert(to_daughter);
          Instruction from_daughter{sigma, beta, gamma, x, d, Direction::In};
          if (h.has_edge(ximg, y, gamma))
            r.inset.insert(from_daughter);
          else
            r.outset.insert(from_daughter);
        }
      }
    }
    for (const Instruction &ins : r.inset)
      if (r.outset.count(ins)) {
        contradictory = true;
        break;
      }
    if (contradictory) continue;
    realizations.push_back(std::move(r));
  }
  return realizations;
}

CompatInstance build_compat_instance(
    const LabeledDigraph &h, const LabeledDigraph &pattern,
    const std::set<std::string> &nonterminal_labels, std::size_t max_boundary,
    const std::vector<std::string> &edge_label_universe,
    const std::set<Instruction> *required_instructions) {
  CompatInstance instance;
  instance.occurrences = ground_occurrences(pattern, h, nonterminal_labels);
  for (std::size_t i = 0; i < instance.occurrences.size(); ++i) {
    for (Realization &r :
         enumerate_redirections(h, instance.occurrences[i], i, max_boundary,
                                 edge_label_universe)) {
      if (required_instructions != nullptr) {
        bool inset_ok = std::includes(
            required_instructions->begin(), required_instructions->end(),
            r.inset.begin(), r.inset.end());
        if (!inset_ok) continue;
        bool outset_clash = false;
        for (const Instruction &ins : r.outset)
          if (required_instructions->count(ins)) {
            outset_clash = true;
            break;
          }
        if (outset_clash) continue;
      }
      instance.realizations.push_back(std::move(r));
    }
  }

  instance.adjacency.assign(instance.realizations.size(), {});
  for (std::size_t i = 0; i < instance.realizations.size(); ++i) {
    const Realization &a = instance.realizations[i];
    for (std::size_t j = i + 1; j < instance.realizations.size(); ++j) {
      const Realization &b = instance.realizations[j];
      // Two contractions may not share a component: each component carries
      // at most one nonterminal at a time.
      if (instance.occurrences[a.occurrence_index].component ==
          instance.occurrences[b.occurrence_index].component)
        continue;
      if (required_instructions == nullptr) {
        // A joint rule must contain both insets and avoid both outsets.
        bool clash = false;
        for (const Realization *first : {&a, &b}) {
          const Realization *second = first == &a ? &b : &a;
          for (const Instruction &ins : first->inset) {
            if (second->outset.count(ins) || first->outset.count(ins)) {
              clash = true;
              break;
            }
          }
          if (clash) break;
        }
        if (clash) continue;
      }
      instance.adjacency[i].insert(j);
      instance.adjacency[j].insert(i);
    }
  }
  return instance;
}

std::set<Instruction> or_reduce(const CompatInstance &instance,
                                const std::vector<std::size_t> &clique) {
  std::set<Instruction> joined;
  for (std::size_t idx : clique) {
    const Realization &r = instance.realizations[idx];
    joined.insert(r.inset.begin(), r.inset.end());
  }
  return joined;
}

CliqueSolver clique_solver_from_string(const std::string &s) {
  if (s == "exact") return CliqueSolver::Exact;
  if (s == "approx") return CliqueSolver::Approx;
  if (s == "greedy") return CliqueSolver::Greedy;
  throw InputError("clique solver must be exact, approx or greedy, got '" + s +
                   "'");
}

std::string to_string(CliqueSolver s) {
  switch (s) {
    case CliqueSolver::Exact: return "exact";
    case CliqueSolver::Approx: return "approx";
    case CliqueSolver::Greedy: return "greedy";
  }
  throw InternalError("unknown clique solver");
}

namespace {

bool adjacent(const std::vector<std::set<std::size_t>> &adj, std::size_t a,
              std::size_t b) {
  return adj[a].count(b) != 0;
}

struct ExactCliqueSearch {
  const std::vector<std::set<std::size_t>> &adj;
  std::vector<std::size_t> best;

  void extend(std::vector<std::size_t> &current,
              const std::vector<std::size_t> &candidates) {
    // Strict prune only: equal-size cliques still matter for the
    // lexicographic tie-break.
    if (current.size() + candidates.size() < best.size()) return;
    if (candidates.empty()) {
      if (current.size() > best.size() ||
          (current.size() == best.size() && current < best))
        best = current;
      return;
    }
    const std::size_t v = candidates.front();
    std::vector<std::size_t> with_v;
    for (std::size_t u : candidates)
      if (u != v && adjacent(adj, v, u)) with_v.push_back(u);
    current.push_back(v);
    extend(current, with_v);
    current.pop_back();
    std::vector<std::size_t> without_v(candidates.begin() + 1,
                                       candidates.end());
    extend(current, without_v);
  }
};

// Ramsey-style recursion: returns a clique and an independent set of the
// subgraph induced by `nodes`.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> ramsey(
    const std::vector<std::set<std::size_t>> &adj,
    const std::vector<std::size_t> &nodes) {
  if (nodes.empty()) return {{}, {}};
  const std::size_t v = nodes.front();
  std::vector<std::size_t> linked, unlinked;
  for (std::size_t u : nodes) {
    if (u == v) continue;
    (adjacent(adj, v, u) ? linked : unlinked).push_back(u);
  }
  auto [c1, i1] = ramsey(adj, linked);
  auto [c2, i2] = ramsey(adj, unlinked);
  c1.push_back(v);
  i2.push_back(v);
  std::sort(c1.begin(), c1.end());
  std::sort(i2.begin(), i2.end());
  if (c2.size() > c1.size()) c1 = std::move(c2);
  if (i1.size() > i2.size()) i2 = std::move(i1);
  return {c1, i2};
}

}  // namespace

std::vector<std::size_t> solve_max_clique(
    const std::vector<std::set<std::size_t>> &adjacency,
    const CliqueOptions &opts, Rng *rng) {
  const std::size_t n = adjacency.size();
  if (n == 0) return {};
  std::vector<std::size_t> result;
  switch (opts.solver) {
    case CliqueSolver::Exact: {
      if (n > opts.exact_cap)
        throw BudgetError(
            "compatibility graph has " + std::to_string(n) +
            " realizations, above the exact clique cap of " +
            std::to_string(opts.exact_cap) +
            "; rerun with --clique-solver approx or greedy");
      std::vector<std::size_t> all(n);
      for (std::size_t i = 0; i < n; ++i) all[i] = i;
      ExactCliqueSearch search{adjacency, {}};
      std::vector<std::size_t> current;
      search.extend(current, all);
      result = search.best;
      break;
    }
    case CliqueSolver::Approx: {
      std::vector<std::size_t> remaining(n);
      for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
      while (!remaining.empty()) {
        auto [clique, independent] = ramsey(adjacency, remaining);
        if (clique.size() > result.size()) result = clique;
        std::set<std::size_t> drop(independent.begin(), independent.end());
        std::vector<std::size_t> next;
        for (std::size_t u : remaining)
          if (!drop.count(u)) next.push_back(u);
        if (next.size() == remaining.size()) break;  // defensive, cannot stall
        remaining = std::move(next);
      }
      break;
    }
    case CliqueSolver::Greedy: {
      if (rng == nullptr)
        throw InternalError("greedy clique tier needs a random source");
      for (std::size_t attempt = 0; attempt < opts.restarts; ++attempt) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        rng->shuffle(order);
        std::vector<std::size_t> clique;
        for (std::size_t v : order) {
          bool fits = true;
          for (std::size_t u : clique)
            if (!adjacent(adjacency, v, u)) {
              fits = false;
              break;
            }
          if (fits) clique.push_back(v);
        }
        std::sort(clique.begin(), clique.end());
        if (clique.size() > result.size() ||
            (clique.size() == result.size() && clique < result))
          result = clique;
      }
      break;
    }
  }
  std::sort(result.begin(), result.end());
  for (std::size_t i = 0; i < result.size(); ++i)
    for (std::size_t j = i + 1; j < result.size(); ++j)
      if (!adjacent(adjacency, result[i], result[j]))
        throw InternalError("clique solver returned a non-clique");
  return result;
}

}  // namespace ednce
