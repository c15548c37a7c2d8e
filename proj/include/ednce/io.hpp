#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ednce/dataset.hpp"
#include "ednce/grammar.hpp"

namespace ednce {

// All writers emit keys in a fixed order and newline-terminate, so identical
// inputs produce identical bytes.

nlohmann::ordered_json graph_to_json(const LabeledDigraph &g);
LabeledDigraph graph_from_json(const nlohmann::json &j,
                               const std::string &context);

DagDataset load_dataset(const std::string &path);
void save_dataset(const DagDataset &data, const std::string &path);

Grammar load_grammar(const std::string &path);
void save_grammar(const Grammar &g, const std::string &path);

// JSONL, one {"graph_index", "rule_ids"} object per line.
std::vector<Parse> load_parses(const std::string &path);
void save_parses(const std::vector<Parse> &parses, const std::string &path);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

}  // namespace ednce
