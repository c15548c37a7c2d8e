#include "fixtures.hpp"

namespace ednce::fixtures {

namespace {

LabeledDigraph conflict_core() {
  LabeledDigraph g;
  g.add_node("n1", "blue");
  g.add_node("n2", "yellow");
  g.add_node("g", "green");
  g.add_edge("n1", "n2", "black");
  g.add_edge("g", "n2", "black");
  g.add_edge("n1", "g", "black");
  return g;
}

}  // namespace

DagDataset motif_conflict_dataset() {
  DagDataset data;
  data.labels.sigma = {"blue", "yellow", "green", "purple"};
  data.labels.edge_labels = {"black"};

  data.graphs.push_back(conflict_core());

  LabeledDigraph h2 = conflict_core();
  h2.add_node("p2", "purple");
  h2.add_edge("g", "p2", "black");
  data.graphs.push_back(h2);

  LabeledDigraph h3 = conflict_core();
  h3.add_node("p3", "purple");
  h3.add_edge("p3", "g", "black");
  data.graphs.push_back(h3);

  return data;
}

LabeledDigraph motif_blue_yellow() {
  LabeledDigraph p;
  p.add_node("1", "blue");
  p.add_node("2", "yellow");
  p.add_edge("1", "2", "black");
  return p;
}

LabeledDigraph reversed_conflict_graph() {
  LabeledDigraph g;
  g.add_node("n1", "blue");
  g.add_node("n2", "yellow");
  g.add_node("g", "green");
  g.add_edge("n1", "n2", "black");
  g.add_edge("n2", "g", "black");
  g.add_edge("n1", "g", "black");
  return g;
}

LabeledDigraph compose(const DagDataset &data) {
  LabeledDigraph h;
  for (std::size_t i = 0; i < data.graphs.size(); ++i) {
    const std::string prefix = std::to_string(i) + ".";
    for (const auto &[id, label] : data.graphs[i].nodes())
      h.add_node(prefix + id, label);
    for (const Edge &e : data.graphs[i].edges())
      h.add_edge(prefix + e.src, prefix + e.dst, e.label);
  }
  return h;
}

DagDataset chains_dataset() {
  DagDataset data;
  data.labels.sigma = {"x", "y", "z"};
  data.labels.edge_labels = {"e"};
  for (int i = 0; i < 3; ++i) {
    LabeledDigraph g;
    g.add_node("a", "x");
    g.add_node("b", "y");
    g.add_node("c", "z");
    g.add_edge("a", "b", "e");
    g.add_edge("b", "c", "e");
    data.graphs.push_back(g);
  }
  return data;
}

namespace {

// The replaced nonterminal always hangs off the chain tip, an a or b node
// with an incoming edge; both variants hand the edge to daughter node "1".
std::set<Instruction> tip_instructions() {
  return {Instruction{"a", "e", "e", "1", Direction::In, Direction::Out},
          Instruction{"b", "e", "e", "1", Direction::In, Direction::Out}};
}

}  // namespace

Rule chain_start_rule() {
  Rule r0;
  r0.id = 0;
  r0.lhs = "S";
  r0.daughter.add_node("1", "a");
  r0.daughter.add_node("2", "N");
  r0.daughter.add_edge("1", "2", "e");
  return r0;
}

Rule chain_terminal_rule(int id) {
  Rule r;
  r.id = id;
  r.lhs = "N";
  r.daughter.add_node("1", "c");
  r.instructions = tip_instructions();
  return r;
}

LabeledDigraph chain_a_bs_c(std::size_t bs) {
  LabeledDigraph g;
  g.add_node("u0", "a");
  NodeId prev = "u0";
  for (std::size_t i = 1; i <= bs; ++i) {
    const NodeId id = "u" + std::to_string(i);
    g.add_node(id, "b");
    g.add_edge(prev, id, "e");
    prev = id;
  }
  g.add_node("uc", "c");
  g.add_edge(prev, "uc", "e");
  return g;
}

Grammar twin_rules_grammar() {
  Grammar g;
  g.labels.sigma = {"a", "b", "c"};
  g.labels.nonterminals = {"S", "N"};
  g.labels.edge_labels = {"e"};
  g.labels.start = "S";
  g.start = "S";
  g.rules.push_back(chain_start_rule());
  for (int id : {1, 2}) {
    Rule r;
    r.id = id;
    r.lhs = "N";
    r.daughter.add_node("1", "b");
    r.daughter.add_node("2", "N");
    r.daughter.add_edge("1", "2", "e");
    r.instructions = tip_instructions();
    g.rules.push_back(r);
  }
  g.rules.push_back(chain_terminal_rule(3));
  return g;
}

LabeledDigraph twin_rules_target() { return chain_a_bs_c(2); }

Grammar two_three_grammar() {
  Grammar g;
  g.labels.sigma = {"a", "b", "c"};
  g.labels.nonterminals = {"S", "N"};
  g.labels.edge_labels = {"e"};
  g.labels.start = "S";
  g.start = "S";
  g.rules.push_back(chain_start_rule());
  for (int id : {1, 2}) {
    Rule r;
    r.id = id;
    r.lhs = "N";
    const std::size_t bs = id == 1 ? 2 : 3;
    NodeId prev;
    for (std::size_t i = 1; i <= bs; ++i) {
      const NodeId node = std::to_string(i);
      r.daughter.add_node(node, "b");
      if (i > 1) r.daughter.add_edge(prev, node, "e");
      prev = node;
    }
    const NodeId nt = std::to_string(bs + 1);
    r.daughter.add_node(nt, "N");
    r.daughter.add_edge(prev, nt, "e");
    r.instructions = tip_instructions();
    g.rules.push_back(r);
  }
  g.rules.push_back(chain_terminal_rule(3));
  return g;
}

LabeledDigraph two_three_target() { return chain_a_bs_c(5); }

}  // namespace ednce::fixtures
