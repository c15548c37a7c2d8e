#include "ednce/mining.hpp"

#include <algorithm>

#include "ednce/errors.hpp"
#include "ednce/isomorphism.hpp"

namespace ednce {

namespace {

struct Candidate {
  LabeledDigraph pattern;  // canonical relabeling of the first image found
  CanonicalKey key;
  std::set<std::set<NodeId>> images;
  std::size_t support = 0;  // admissible images only
};

// Candidates grouped by key with an isomorphism confirmation inside each
// bucket; the key alone is strong but not airtight.
struct CandidatePool {
  std::map<CanonicalKey, std::vector<Candidate>> buckets;

  Candidate &candidate_for(const LabeledDigraph &h,
                           const std::set<NodeId> &image) {
    LabeledDigraph sub = induced_subgraph(h, image);
    CanonicalKey key = canonical_key(sub);
    auto &bucket = buckets[key];
    for (Candidate &c : bucket)
      if (is_isomorphic(c.pattern, sub)) return c;
    Candidate fresh;
    fresh.pattern = relabel_canonically(sub);
    fresh.key = key;
    bucket.push_back(std::move(fresh));
    return bucket.back();
  }
};

}  // namespace

std::vector<Motif> mine_motifs(const LabeledDigraph &h,
                               const std::set<std::string> &nonterminal_labels,
                               const MineOptions &opts) {
  auto components = weakly_connected_components(h);
  std::map<NodeId, int> comp_of;
  std::vector<std::set<NodeId>> comp_nts(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (const NodeId &n : components[c]) {
      comp_of[n] = static_cast<int>(c);
      if (nonterminal_labels.count(h.node_label(n))) comp_nts[c].insert(n);
    }
  }
  auto admissible = [&](const std::set<NodeId> &image) {
    const auto &nts = comp_nts[comp_of.at(*image.begin())];
    for (const NodeId &nt : nts)
      if (!image.count(nt)) return false;
    return true;
  };

  // Level k holds connected induced subgraphs with k nodes. Inadmissible
  // images still extend: a larger image may absorb the component's
  // nonterminal and become contractable.
  std::vector<Candidate> level;
  {
    CandidatePool seed_pool;
    for (const auto &[id, label] : h.nodes()) {
      Candidate &c = seed_pool.candidate_for(h, {id});
      c.images.insert({id});
    }
    for (auto &[key, bucket] : seed_pool.buckets)
      for (Candidate &c : bucket) level.push_back(std::move(c));
  }

  std::vector<Candidate> collected;
  for (std::size_t size = 2; size <= opts.max_motif_size; ++size) {
    CandidatePool next_pool;
    for (const Candidate &c : level) {
      for (const std::set<NodeId> &image : c.images) {
        std::set<NodeId> fringe;
        for (const NodeId &n : image)
          for (const NodeId &m : neighbors(h, n))
            if (!image.count(m)) fringe.insert(m);
        for (const NodeId &v : fringe) {
          std::set<NodeId> grown = image;
          grown.insert(v);
          Candidate &target = next_pool.candidate_for(h, grown);
          target.images.insert(std::move(grown));
        }
      }
    }

    std::vector<Candidate> next;
    for (auto &[key, bucket] : next_pool.buckets) {
      for (Candidate &c : bucket) {
        std::size_t nt_nodes = 0;
        for (const auto &[id, label] : c.pattern.nodes())
          if (nonterminal_labels.count(label)) ++nt_nodes;
        if (nt_nodes > 1) continue;  // cannot sit on a rule's right-hand side
        for (const std::set<NodeId> &image : c.images)
          if (admissible(image)) ++c.support;
        next.push_back(std::move(c));
      }
    }
    if (next.empty()) break;

    auto better = [](const Candidate &a, const Candidate &b) {
      const std::size_t sa = a.support * (a.pattern.node_count() - 1);
      const std::size_t sb = b.support * (b.pattern.node_count() - 1);
      return sa > sb || (sa == sb && a.key < b.key);
    };
    std::sort(next.begin(), next.end(), better);
    for (const Candidate &c : next) collected.push_back(c);
    if (!opts.exhaustive && next.size() > opts.beam_width)
      next.resize(opts.beam_width);
    level = std::move(next);
  }

  std::vector<Motif> motifs;
  for (const Candidate &c : collected) {
    if (c.support < 2) continue;
    Motif m;
    m.pattern = c.pattern;
    m.key = c.key;
    m.support = c.support;
    m.score = c.support * (c.pattern.node_count() - 1);
    motifs.push_back(std::move(m));
  }
  std::sort(motifs.begin(), motifs.end(), [](const Motif &a, const Motif &b) {
    return a.score > b.score || (a.score == b.score && a.key < b.key);
  });
  if (motifs.size() > opts.top_n) motifs.resize(opts.top_n);
  return motifs;
}

}  // namespace ednce
