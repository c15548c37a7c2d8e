#include "ednce/canonical.hpp"

#include <algorithm>
#include <openssl/evp.h>

#include "ednce/errors.hpp"

namespace ednce {

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_MD_CTX *ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw InternalError("EVP_MD_CTX_new failed");
  bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
            EVP_DigestFinal_ex(ctx, digest, &digest_len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw InternalError("SHA-256 computation failed");
  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::map<NodeId, std::string> unfolding_colors(const LabeledDigraph &g) {
  // Children before parents, so each color is ready when needed.
  std::vector<NodeId> order = topological_order(g);
  std::map<NodeId, std::string> colors;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId &n = *it;
    const auto &outgoing = g.out_edges(n);
    if (outgoing.empty()) {
      colors[n] = g.node_label(n);
      continue;
    }
    std::vector<std::string> entries;
    entries.reserve(outgoing.size());
    for (const auto &[dst, edge_label] : outgoing)
      entries.push_back(edge_label + ":" + colors.at(dst));
    std::sort(entries.begin(), entries.end());
    std::string color = g.node_label(n) + ",";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) color += " ";
      color += entries[i];
    }
    colors[n] = std::move(color);
  }
  return colors;
}

std::string unfolding_digest(const LabeledDigraph &g) {
  auto colors = unfolding_colors(g);
  std::vector<std::string> root_colors;
  for (const NodeId &r : source_nodes(g)) root_colors.push_back(colors.at(r));
  std::sort(root_colors.begin(), root_colors.end());
  std::string joined;
  for (std::size_t i = 0; i < root_colors.size(); ++i) {
    if (i) joined += "|";
    joined += root_colors[i];
  }
  return sha256_hex(joined);
}

CanonicalKey canonical_key(const LabeledDigraph &g) {
  CanonicalKey key;
  key.digest = unfolding_digest(g);
  key.node_count = g.node_count();
  key.edge_count = g.edge_count();
  for (const auto &[id, label] : g.nodes())
    key.degree_signature.emplace_back(g.in_edges(id).size(),
                                      g.out_edges(id).size(), label);
  std::sort(key.degree_signature.begin(), key.degree_signature.end());
  return key;
}

std::string CanonicalKey::to_string() const {
  std::string s = digest + "/" + std::to_string(node_count) + "/" +
                  std::to_string(edge_count) + "/";
  for (const auto &[in_deg, out_deg, label] : degree_signature)
    s += std::to_string(in_deg) + ":" + std::to_string(out_deg) + ":" + label +
         ";";
  return s;
}

LabeledDigraph relabel_canonically(const LabeledDigraph &g,
                                   std::map<NodeId, NodeId> *old_to_new) {
  auto colors = unfolding_colors(g);
  std::vector<NodeId> order;
  for (const auto &[id, label] : g.nodes()) order.push_back(id);
  std::sort(order.begin(), order.end(), [&](const NodeId &a, const NodeId &b) {
    auto rank = [&](const NodeId &n) {
      return std::make_tuple(colors.at(n), g.node_label(n),
                             g.in_edges(n).size(), g.out_edges(n).size(), n);
    };
    return rank(a) < rank(b);
  });
  std::map<NodeId, NodeId> mapping;
  for (std::size_t i = 0; i < order.size(); ++i)
    mapping[order[i]] = std::to_string(i);
  LabeledDigraph out;
  for (const NodeId &id : order) out.add_node(mapping[id], g.node_label(id));
  for (const Edge &e : g.edges())
    out.add_edge(mapping[e.src], mapping[e.dst], e.label);
  if (old_to_new != nullptr) *old_to_new = std::move(mapping);
  return out;
}

}  // namespace ednce
