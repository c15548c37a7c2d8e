#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>

#include "ednce/canonical.hpp"
#include "ednce/errors.hpp"
#include "ednce/grammar.hpp"
#include "ednce/isomorphism.hpp"

namespace ednce {

namespace {

using Clock = std::chrono::steady_clock;

struct MemoBucket {
  LabeledDigraph representative;
  std::vector<std::vector<int>> suffixes;
};

// Per-rule facts that let a candidate application be rejected without
// building the result graph.
struct RuleProfile {
  const Rule *rule = nullptr;
  std::size_t daughter_nodes = 0;
  bool daughter_has_nt = false;
  std::map<std::string, std::size_t> terminal_counts;
};

struct Enumerator {
  const Grammar &g;
  const LabeledDigraph &target;
  const EnumerationOptions &opts;
  std::vector<RuleProfile> rules_by_id;
  std::optional<Clock::time_point> deadline;
  // CanonicalKey is a strong but not perfect discriminator, so each key maps
  // to buckets confirmed pairwise non-isomorphic. Deque: growth must not
  // invalidate references handed out on memo hits.
  std::map<CanonicalKey, std::deque<MemoBucket>> memo;
  std::size_t fresh_counter = 0;
  std::size_t stored_suffixes = 0;

  std::map<std::string, std::size_t> target_label_counts;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
      target_degrees;

  Enumerator(const Grammar &grammar, const LabeledDigraph &t,
             const EnumerationOptions &o)
      : g(grammar), target(t), opts(o) {
    for (const Rule &r : g.rules) {
      RuleProfile p;
      p.rule = &r;
      p.daughter_nodes = r.daughter.node_count();
      for (const auto &[id, label] : r.daughter.nodes()) {
        if (g.is_nonterminal(label))
          p.daughter_has_nt = true;
        else
          ++p.terminal_counts[label];
      }
      rules_by_id.push_back(std::move(p));
    }
    std::sort(rules_by_id.begin(), rules_by_id.end(),
              [](const RuleProfile &a, const RuleProfile &b) {
                return a.rule->id < b.rule->id;
              });
    if (opts.timeout_seconds > 0)
      deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(
                                        opts.timeout_seconds));
    for (const auto &[id, label] : target.nodes()) {
      ++target_label_counts[label];
      target_degrees[label].emplace_back(target.in_edges(id).size(),
                                         target.out_edges(id).size());
    }
  }

  void charge_suffixes(std::size_t n) {
    stored_suffixes += n;
    // Generous slack over the per-graph cap; only runaway blowup trips this.
    const std::size_t guard = 64 * (opts.max_derivations + 1);
    if (stored_suffixes > guard)
      throw BudgetError("derivation enumeration state exceeded " +
                        std::to_string(guard) + " partial suffixes");
  }

  void check_deadline() const {
    if (deadline && Clock::now() > *deadline)
      throw BudgetError("derivation enumeration timed out");
  }

  std::optional<NodeId> nonterminal_of(const LabeledDigraph &h) const {
    std::optional<NodeId> found;
    for (const auto &[id, label] : h.nodes()) {
      if (!g.is_nonterminal(label)) continue;
      if (found.has_value())
        throw InternalError("enumeration reached a multi-nonterminal state");
      found = id;
    }
    return found;
  }

  bool viable(const LabeledDigraph &h, bool has_nt) const {
    if (!is_dag(h)) return false;
    if (!is_weakly_connected(h)) return false;
    if (!has_nt)
      // Terminal states never grow again, so the isomorphism test in
      // expand() is the only gate left; size equality is the cheap screen,
      // and running the embedding search here would just do that test twice.
      return h.node_count() == target.node_count();
    if (h.node_count() > target.node_count() + 1) return false;
    // The terminal part never changes again, it only gains company, so it
    // must already sit inside the target as an induced subgraph. The
    // nonterminal is excluded here; it may land anywhere later. Cheap
    // necessary conditions run first: per-label node counts, edge count,
    // and per-node degree dominance.
    std::set<NodeId> terminal_nodes;
    std::map<std::string, std::size_t> label_counts;
    for (const auto &[id, label] : h.nodes()) {
      if (g.is_nonterminal(label)) continue;
      terminal_nodes.insert(id);
      const auto it = target_label_counts.find(label);
      if (it == target_label_counts.end() || ++label_counts[label] > it->second)
        return false;
    }
    if (terminal_nodes.empty()) return true;
    const LabeledDigraph part = induced_subgraph(h, terminal_nodes);
    if (part.edge_count() > target.edge_count()) return false;
    for (const auto &[id, label] : part.nodes()) {
      const std::size_t din = part.in_edges(id).size();
      const std::size_t dout = part.out_edges(id).size();
      bool dominated = false;
      for (const auto &[tin, tout] : target_degrees.at(label)) {
        if (tin >= din && tout >= dout) {
          dominated = true;
          break;
        }
      }
      if (!dominated) return false;
    }
    return has_induced_embedding(part, target);
  }

  // Rejects a candidate application arithmetically, before the result graph
  // is built: the successor's node count must respect the budget and its
  // terminal labels must fit within the target's per-label counts.
  bool admissible(const RuleProfile &p, std::size_t state_nodes,
                  const std::map<std::string, std::size_t> &have) const {
    const std::size_t result_nodes = state_nodes - 1 + p.daughter_nodes;
    if (result_nodes > target.node_count() + (p.daughter_has_nt ? 1 : 0))
      return false;
    if (!p.daughter_has_nt && result_nodes != target.node_count())
      return false;
    for (const auto &[label, added] : p.terminal_counts) {
      const auto it = target_label_counts.find(label);
      if (it == target_label_counts.end()) return false;
      const auto h_it = have.find(label);
      const std::size_t existing = h_it == have.end() ? 0 : h_it->second;
      if (existing + added > it->second) return false;
    }
    return true;
  }

  const std::vector<std::vector<int>> &expand(const LabeledDigraph &h) {
    check_deadline();
    CanonicalKey key = canonical_key(h);
    if (opts.use_memo) {
      for (MemoBucket &bucket : memo[key])
        if (is_isomorphic(bucket.representative, h)) return bucket.suffixes;
    }

    std::vector<std::vector<int>> suffixes;
    auto nt = nonterminal_of(h);
    if (!nt.has_value()) {
      if (is_isomorphic(h, target)) suffixes.push_back({});
    } else {
      const std::string &lhs = h.node_label(*nt);
      std::map<std::string, std::size_t> have;
      for (const auto &[id, label] : h.nodes())
        if (!g.is_nonterminal(label)) ++have[label];
      for (const RuleProfile &p : rules_by_id) {
        const Rule *r = p.rule;
        if (r->lhs != lhs) continue;
        if (!admissible(p, h.node_count(), have)) continue;
        LabeledDigraph next =
            apply_rule(h, *nt, *r, "n" + std::to_string(fresh_counter++) + ".")
                .graph;
        bool next_has_nt = nonterminal_of(next).has_value();
        if (!viable(next, next_has_nt)) continue;
        // Copied: the recursive call may grow the deque the reference
        // points into before we are done reading.
        std::vector<std::vector<int>> sub = expand(next);
        charge_suffixes(sub.size());
        for (auto &s : sub) {
          std::vector<int> seq;
          seq.reserve(s.size() + 1);
          seq.push_back(r->id);
          seq.insert(seq.end(), s.begin(), s.end());
          suffixes.push_back(std::move(seq));
        }
      }
    }

    // Rules were visited in ascending id order and each suffix block is
    // sorted by induction, so the result is in lexicographic order.
    auto &buckets = memo[key];
    buckets.push_back(MemoBucket{h, std::move(suffixes)});
    return buckets.back().suffixes;
  }
};

}  // namespace

std::vector<std::vector<int>> enumerate_derivations(
    const Grammar &g, const LabeledDigraph &target,
    const EnumerationOptions &opts) {
  Enumerator e(g, target, opts);
  LabeledDigraph axiom;
  axiom.add_node("s", g.start);
  std::vector<std::vector<int>> result = e.expand(axiom);
  if (result.size() > opts.max_derivations)
    throw BudgetError("graph admits more than " +
                      std::to_string(opts.max_derivations) + " derivations");
  return result;
}

}  // namespace ednce
