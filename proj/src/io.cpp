#include "ednce/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "ednce/errors.hpp"

namespace ednce {

bool is_reserved_node_label(const std::string &label) {
  static const std::regex reserved("^(black|gray)(:[0-9]+)?$");
  return std::regex_match(label, reserved);
}

void validate_dataset(const DagDataset &data) {
  const LabelVocabulary &v = data.labels;
  if (v.sigma.empty()) throw InputError("labels.sigma must be non-empty");
  std::set<std::string> sigma(v.sigma.begin(), v.sigma.end());
  if (sigma.size() != v.sigma.size())
    throw InputError("labels.sigma contains duplicates");
  std::set<std::string> nts(v.nonterminals.begin(), v.nonterminals.end());
  for (const std::string &s : v.sigma) {
    if (nts.count(s))
      throw InputError("label '" + s + "' is both terminal and nonterminal");
    if (is_reserved_node_label(s))
      throw InputError("terminal label '" + s +
                       "' is reserved for grammar construction");
  }
  if (!v.start.empty() && !nts.count(v.start))
    throw InputError("start symbol '" + v.start + "' not in nonterminals");
  std::set<std::string> edge_labels(v.edge_labels.begin(),
                                    v.edge_labels.end());
  if (edge_labels.empty()) throw InputError("labels.edge_labels must be non-empty");

  for (std::size_t i = 0; i < data.graphs.size(); ++i) {
    const LabeledDigraph &g = data.graphs[i];
    const std::string where = "graph " + std::to_string(i);
    if (g.node_count() == 0) throw InputError(where + " has no nodes");
    for (const auto &[id, label] : g.nodes())
      if (!sigma.count(label))
        throw InputError(where + ": node '" + id + "' has label '" + label +
                         "' outside labels.sigma");
    for (const Edge &e : g.edges())
      if (!edge_labels.count(e.label))
        throw InputError(where + ": edge label '" + e.label +
                         "' outside labels.edge_labels");
    if (!is_weakly_connected(g))
      throw InputError(where + " is not weakly connected");
    if (!is_dag(g)) throw InputError(where + " has a cycle");
  }
}

namespace {

nlohmann::json parse_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw InputError("failed to parse '" + path + "': " + e.what());
  }
  return j;
}

std::vector<std::string> string_list(const nlohmann::json &j,
                                     const std::string &context) {
  if (!j.is_array())
    throw InputError(context + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto &item : j) {
    if (!item.is_string())
      throw InputError(context + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

LabelVocabulary vocabulary_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw InputError("labels must be an object");
  LabelVocabulary v;
  if (!j.contains("sigma")) throw InputError("labels.sigma is required");
  v.sigma = string_list(j.at("sigma"), "labels.sigma");
  v.nonterminals = j.contains("nonterminals")
                       ? string_list(j.at("nonterminals"), "labels.nonterminals")
                       : std::vector<std::string>{"black"};
  if (!j.contains("edge_labels"))
    throw InputError("labels.edge_labels is required");
  v.edge_labels = string_list(j.at("edge_labels"), "labels.edge_labels");
  v.start = j.value("start", std::string("black"));
  if (std::find(v.nonterminals.begin(), v.nonterminals.end(), v.start) ==
      v.nonterminals.end())
    v.nonterminals.push_back(v.start);
  return v;
}

nlohmann::ordered_json vocabulary_to_json(const LabelVocabulary &v) {
  nlohmann::ordered_json j;
  j["sigma"] = v.sigma;
  j["nonterminals"] = v.nonterminals;
  j["edge_labels"] = v.edge_labels;
  j["start"] = v.start;
  return j;
}

}  // namespace

nlohmann::ordered_json graph_to_json(const LabeledDigraph &g) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto &[id, label] : g.nodes()) {
    nlohmann::ordered_json node;
    node["id"] = id;
    node["label"] = label;
    j["nodes"].push_back(node);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge &e : g.edges()) {
    nlohmann::ordered_json edge;
    edge["src"] = e.src;
    edge["dst"] = e.dst;
    edge["label"] = e.label;
    j["edges"].push_back(edge);
  }
  return j;
}

LabeledDigraph graph_from_json(const nlohmann::json &j,
                               const std::string &context) {
  if (!j.is_object() || !j.contains("nodes"))
    throw InputError(context + ": graph object must contain 'nodes'");
  LabeledDigraph g;
  try {
    for (const auto &node : j.at("nodes")) {
      if (!node.contains("id") || !node.contains("label"))
        throw InputError(context + ": node needs 'id' and 'label'");
      g.add_node(node.at("id").get<std::string>(),
                 node.at("label").get<std::string>());
    }
    if (j.contains("edges")) {
      for (const auto &edge : j.at("edges")) {
        if (!edge.contains("src") || !edge.contains("dst"))
          throw InputError(context + ": edge needs 'src' and 'dst'");
        if (!edge.contains("label"))
          throw InputError(context + ": edge needs 'label'");
        g.add_edge(edge.at("src").get<std::string>(),
                   edge.at("dst").get<std::string>(),
                   edge.at("label").get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw InputError(context + ": malformed graph JSON: " + e.what());
  } catch (const InputError &e) {
    throw InputError(context + ": " + e.what());
  }
  return g;
}

DagDataset load_dataset(const std::string &path) {
  nlohmann::json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("labels") || !j.contains("graphs"))
    throw InputError("dataset '" + path + "' needs 'labels' and 'graphs'");
  DagDataset data;
  data.labels = vocabulary_from_json(j.at("labels"));
  if (!j.at("graphs").is_array())
    throw InputError("dataset 'graphs' must be an array");
  std::size_t index = 0;
  for (const auto &graph_json : j.at("graphs")) {
    data.graphs.push_back(
        graph_from_json(graph_json, "graph " + std::to_string(index)));
    ++index;
  }
  validate_dataset(data);
  return data;
}

void save_dataset(const DagDataset &data, const std::string &path) {
  nlohmann::ordered_json j;
  j["labels"] = vocabulary_to_json(data.labels);
  j["graphs"] = nlohmann::ordered_json::array();
  for (const LabeledDigraph &g : data.graphs) j["graphs"].push_back(graph_to_json(g));
  write_text_file(path, j.dump(2) + "\n");
}

Grammar load_grammar(const std::string &path) {
  nlohmann::json j = parse_json_file(path);
  if (!j.is_object() || !j.contains("labels") || !j.contains("rules"))
    throw InputError("grammar '" + path + "' needs 'labels' and 'rules'");
  Grammar g;
  g.labels = vocabulary_from_json(j.at("labels"));
  g.start = j.value("start", g.labels.start);
  try {
    for (const auto &rule_json : j.at("rules")) {
      Rule r;
      r.id = rule_json.at("id").get<int>();
      r.lhs = rule_json.at("lhs").get<std::string>();
      r.daughter = graph_from_json(rule_json.at("daughter"),
                                   "rule " + std::to_string(r.id));
      for (const auto &ins_json : rule_json.value("instructions",
                                                  nlohmann::json::array())) {
        Instruction ins;
        ins.sigma = ins_json.at("sigma").get<std::string>();
        ins.beta = ins_json.at("beta").get<std::string>();
        ins.gamma = ins_json.at("gamma").get<std::string>();
        ins.x = ins_json.at("x").get<std::string>();
        ins.d = direction_from_string(ins_json.at("d").get<std::string>());
        ins.d_prime =
            direction_from_string(ins_json.at("d_prime").get<std::string>());
        r.instructions.insert(ins);
      }
      g.rules.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception &e) {
    throw InputError("grammar '" + path + "' is malformed: " + e.what());
  }
  std::sort(g.rules.begin(), g.rules.end(),
            [](const Rule &a, const Rule &b) { return a.id < b.id; });
  validate_grammar(g);
  return g;
}

void save_grammar(const Grammar &g, const std::string &path) {
  nlohmann::ordered_json j;
  j["labels"] = vocabulary_to_json(g.labels);
  j["start"] = g.start;
  j["rules"] = nlohmann::ordered_json::array();
  for (const Rule &r : g.rules) {
    nlohmann::ordered_json rule_json;
    rule_json["id"] = r.id;
    rule_json["lhs"] = r.lhs;
    rule_json["daughter"] = graph_to_json(r.daughter);
    rule_json["instructions"] = nlohmann::ordered_json::array();
    for (const Instruction &ins : r.instructions) {
      nlohmann::ordered_json ins_json;
      ins_json["sigma"] = ins.sigma;
      ins_json["beta"] = ins.beta;
      ins_json["gamma"] = ins.gamma;
      ins_json["x"] = ins.x;
      ins_json["d"] = to_string(ins.d);
      ins_json["d_prime"] = to_string(ins.d_prime);
      rule_json["instructions"].push_back(ins_json);
    }
    j["rules"].push_back(rule_json);
  }
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<Parse> load_parses(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<Parse> parses;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      Parse p;
      p.graph_index = j.at("graph_index").get<int>();
      p.rule_ids = j.at("rule_ids").get<std::vector<int>>();
      parses.push_back(std::move(p));
    } catch (const nlohmann::json::exception &e) {
      throw InputError("parses '" + path + "' line " +
                       std::to_string(line_no) + ": " + e.what());
    }
  }
  return parses;
}

void save_parses(const std::vector<Parse> &parses, const std::string &path) {
  std::ostringstream out;
  for (const Parse &p : parses) {
    nlohmann::ordered_json j;
    j["graph_index"] = p.graph_index;
    j["rule_ids"] = p.rule_ids;
    out << j.dump() << "\n";
  }
  write_text_file(path, out.str());
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("short write to '" + path + "'");
}

}  // namespace ednce
