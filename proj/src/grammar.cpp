#include "ednce/grammar.hpp"

#include <algorithm>
#include <optional>

#include "ednce/errors.hpp"

namespace ednce {

std::string to_string(Direction d) {
  return d == Direction::In ? "in" : "out";
}

Direction direction_from_string(const std::string &s) {
  if (s == "in") return Direction::In;
  if (s == "out") return Direction::Out;
  throw InputError("direction must be 'in' or 'out', got '" + s + "'");
}

const Rule &Grammar::rule_by_id(int id) const {
  for (const Rule &r : rules)
    if (r.id == id) return r;
  throw InputError("unknown rule id " + std::to_string(id));
}

bool Grammar::is_nonterminal(const std::string &label) const {
  if (label == start) return true;
  return std::find(labels.nonterminals.begin(), labels.nonterminals.end(),
                   label) != labels.nonterminals.end();
}

void validate_grammar(const Grammar &g) {
  std::set<std::string> node_labels(g.labels.sigma.begin(),
                                    g.labels.sigma.end());
  std::set<std::string> nts(g.labels.nonterminals.begin(),
                            g.labels.nonterminals.end());
  nts.insert(g.start);
  for (const std::string &nt : nts) node_labels.insert(nt);
  std::set<std::string> edge_labels(g.labels.edge_labels.begin(),
                                    g.labels.edge_labels.end());
  for (const std::string &s : g.labels.sigma)
    if (nts.count(s))
      throw InputError("label '" + s + "' is both terminal and nonterminal");

  std::set<int> seen_ids;
  for (const Rule &r : g.rules) {
    const std::string where = "rule " + std::to_string(r.id);
    if (r.id < 0) throw InputError(where + ": ids must be non-negative");
    if (!seen_ids.insert(r.id).second)
      throw InputError("duplicate rule id " + std::to_string(r.id));
    if (!g.is_nonterminal(r.lhs))
      throw InputError(where + ": lhs '" + r.lhs + "' is not a nonterminal");
    if (r.daughter.node_count() == 0)
      throw InputError(where + ": daughter graph is empty");
    if (!is_weakly_connected(r.daughter))
      throw InputError(where + ": daughter graph is not weakly connected");
    std::size_t nt_nodes = 0;
    for (const auto &[id, label] : r.daughter.nodes()) {
      if (!node_labels.count(label))
        throw InputError(where + ": daughter node label '" + label +
                         "' outside the vocabulary");
      if (g.is_nonterminal(label)) ++nt_nodes;
    }
    if (nt_nodes > 1)
      throw InputError(where + ": daughter graph has " +
                       std::to_string(nt_nodes) + " nonterminal nodes");
    for (const Edge &e : r.daughter.edges())
      if (!edge_labels.count(e.label))
        throw InputError(where + ": daughter edge label '" + e.label +
                         "' outside the vocabulary");
    for (const Instruction &ins : r.instructions) {
      if (!r.daughter.has_node(ins.x))
        throw InputError(where + ": instruction references daughter node '" +
                         ins.x + "' which does not exist");
      if (!node_labels.count(ins.sigma))
        throw InputError(where + ": instruction label '" + ins.sigma +
                         "' outside the vocabulary");
      if (!edge_labels.count(ins.beta) || !edge_labels.count(ins.gamma))
        throw InputError(where + ": instruction edge labels must come from "
                         "labels.edge_labels");
    }
  }
}

ApplyResult apply_rule(const LabeledDigraph &h, const NodeId &n,
                       const Rule &rule, const std::string &fresh_prefix) {
  if (!h.has_node(n)) throw InputError("apply target '" + n + "' not in graph");
  if (h.node_label(n) != rule.lhs)
    throw InputError("rule " + std::to_string(rule.id) + " expects lhs '" +
                     rule.lhs + "' but node '" + n + "' is labeled '" +
                     h.node_label(n) + "'");

  struct Attachment {
    NodeId y;
    std::string beta;
    Direction d;
  };
  std::vector<Attachment> attached;
  for (const auto &[src, label] : h.in_edges(n))
    attached.push_back({src, label, Direction::In});
  for (const auto &[dst, label] : h.out_edges(n))
    attached.push_back({dst, label, Direction::Out});

  ApplyResult result;
  result.graph = h;
  result.graph.remove_node(n);
  for (const auto &[x, label] : rule.daughter.nodes()) {
    NodeId fresh = fresh_prefix + x;
    result.graph.add_node(fresh, label);
    result.placed[x] = fresh;
  }
  for (const Edge &e : rule.daughter.edges())
    result.graph.add_edge(result.placed.at(e.src), result.placed.at(e.dst),
                          e.label);

  for (const Attachment &a : attached) {
    const std::string &neighbor_label = result.graph.node_label(a.y);
    for (const Instruction &ins : rule.instructions) {
      if (ins.sigma != neighbor_label || ins.beta != a.beta || ins.d != a.d)
        continue;
      auto it = result.placed.find(ins.x);
      if (it == result.placed.end())
        throw InternalError("rule " + std::to_string(rule.id) +
                            " instruction references missing daughter node '" +
                            ins.x + "'");
      const NodeId &target = it->second;
      NodeId src = ins.d_prime == Direction::Out ? a.y : target;
      NodeId dst = ins.d_prime == Direction::Out ? target : a.y;
      // Several instructions may prescribe the same edge; the result is the
      // union.
      if (!result.graph.has_edge(src, dst, ins.gamma))
        result.graph.add_edge(src, dst, ins.gamma);
    }
  }
  return result;
}

namespace {

// The unique nonterminal node, or nullopt for a terminal graph. More than
// one violates the grammar family this library builds.
std::optional<NodeId> unique_nonterminal(const Grammar &g,
                                         const LabeledDigraph &h) {
  std::optional<NodeId> found;
  for (const auto &[id, label] : h.nodes()) {
    if (!g.is_nonterminal(label)) continue;
    if (found.has_value())
      throw InternalError("intermediate graph holds more than one nonterminal");
    found = id;
  }
  return found;
}

}  // namespace

LabeledDigraph derive(
    const Grammar &g, const std::vector<int> &rule_ids,
    const std::function<void(const LabeledDigraph &)> &on_step) {
  LabeledDigraph h;
  h.add_node("s", g.start);
  if (on_step) on_step(h);
  int step = 1;
  for (int id : rule_ids) {
    const Rule &r = g.rule_by_id(id);
    auto nt = unique_nonterminal(g, h);
    if (!nt.has_value())
      throw InputError("rule sequence continues past a terminal graph (rule " +
                       std::to_string(id) + ")");
    if (h.node_label(*nt) != r.lhs)
      throw InputError("rule " + std::to_string(id) + " has lhs '" + r.lhs +
                       "' but the pending nonterminal is '" +
                       h.node_label(*nt) + "'");
    h = apply_rule(h, *nt, r, std::to_string(step) + ".").graph;
    if (on_step) on_step(h);
    ++step;
  }
  if (unique_nonterminal(g, h).has_value())
    throw InputError("rule sequence ended before the graph became terminal");
  return h;
}

SampleResult sample(const Grammar &g, Rng &rng, const SampleOptions &opts) {
  LabeledDigraph h;
  h.add_node("s", g.start);
  std::vector<int> applied;
  int step = 1;
  while (true) {
    auto nt = unique_nonterminal(g, h);
    if (!nt.has_value()) break;
    if (applied.size() >= opts.max_steps)
      throw BudgetError("sampling exceeded max_steps (" +
                        std::to_string(opts.max_steps) + ")");
    const std::string &lhs = h.node_label(*nt);
    std::vector<std::pair<int, LabeledDigraph>> admissible;
    for (const Rule &r : g.rules) {
      if (r.lhs != lhs) continue;
      LabeledDigraph candidate =
          apply_rule(h, *nt, r, std::to_string(step) + ".").graph;
      if (!is_dag(candidate)) continue;
      if (!is_weakly_connected(candidate)) continue;
      if (opts.admit && !opts.admit(candidate)) continue;
      admissible.emplace_back(r.id, std::move(candidate));
    }
    if (admissible.empty())
      throw BudgetError("sampling dead end: no admissible rule for '" + lhs +
                        "' after " + std::to_string(applied.size()) +
                        " steps");
    const std::size_t pick = rng.below(admissible.size());
    applied.push_back(admissible[pick].first);
    h = std::move(admissible[pick].second);
    ++step;
  }
  return {std::move(h), std::move(applied)};
}

std::vector<std::pair<int, std::size_t>> token_frequency(
    const std::vector<Parse> &parses) {
  std::map<int, std::size_t> counts;
  for (const Parse &p : parses)
    for (int id : p.rule_ids) ++counts[id];
  std::vector<std::pair<int, std::size_t>> table(counts.begin(), counts.end());
  std::sort(table.begin(), table.end(),
            [](const auto &a, const auto &b) {
              return a.second > b.second ||
                     (a.second == b.second && a.first < b.first);
            });
  return table;
}

}  // namespace ednce
