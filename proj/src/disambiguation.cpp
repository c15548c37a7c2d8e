#include "ednce/disambiguation.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>

#include "ednce/errors.hpp"

namespace ednce {

HittingSetSolver hitting_set_solver_from_string(const std::string &s) {
  if (s == "exact") return HittingSetSolver::Exact;
  if (s == "beam") return HittingSetSolver::Beam;
  throw InputError("hitting set solver must be exact or beam, got '" + s +
                   "'");
}

std::string to_string(HittingSetSolver s) {
  return s == HittingSetSolver::Exact ? "exact" : "beam";
}

bool is_hitting_set(const std::vector<std::set<int>> &sets,
                    const std::set<int> &candidate) {
  for (const auto &s : sets) {
    bool hit = false;
    for (int e : s)
      if (candidate.count(e)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

namespace {

std::vector<int> sorted_universe(const std::vector<std::set<int>> &sets) {
  std::set<int> u;
  for (const auto &s : sets) u.insert(s.begin(), s.end());
  return {u.begin(), u.end()};
}

void reject_empty_sets(const std::vector<std::set<int>> &sets) {
  for (const auto &s : sets)
    if (s.empty())
      throw InputError("an empty set cannot be hit by any hitting set");
}

// Calls visit(subset) for every k-subset of universe in lexicographic order
// until visit returns true; reports whether any visit succeeded.
bool for_each_k_subset(const std::vector<int> &universe, std::size_t k,
                       const std::function<bool(const std::set<int> &)> &visit) {
  if (k > universe.size()) return false;
  if (k == 0) return visit(std::set<int>{});
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::set<int> subset;
    for (std::size_t i : idx) subset.insert(universe[i]);
    if (visit(subset)) return true;
    // advance the rightmost index that still has room
    bool advanced = false;
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (idx[pos] < pos + universe.size() - k) {
        ++idx[pos];
        for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return false;
  }
}

}  // namespace

std::set<int> exact_hitting_set(const std::vector<std::set<int>> &sets,
                                std::size_t universe_cap) {
  reject_empty_sets(sets);
  if (sets.empty()) return {};
  std::vector<int> universe = sorted_universe(sets);
  if (universe.size() > universe_cap)
    throw BudgetError("hitting set universe has " +
                      std::to_string(universe.size()) +
                      " elements, above the exact cap of " +
                      std::to_string(universe_cap) +
                      "; rerun with --hitting-set beam");
  for (std::size_t k = 0; k <= universe.size(); ++k) {
    std::set<int> found;
    bool ok = for_each_k_subset(universe, k, [&](const std::set<int> &subset) {
      if (!is_hitting_set(sets, subset)) return false;
      found = subset;
      return true;
    });
    if (ok) return found;
  }
  throw InternalError("full universe failed to hit all non-empty sets");
}

std::set<int> beam_hitting_set(const std::vector<std::set<int>> &sets,
                               std::size_t beam_width) {
  reject_empty_sets(sets);
  if (sets.empty()) return {};
  if (beam_width == 0) beam_width = 1;
  std::vector<int> universe = sorted_universe(sets);
  const std::size_t u = universe.size();

  // Scoring dominates the cost, so every universe element carries a bitmask
  // of the sets it hits; a candidate's coverage is then the OR of its
  // elements' masks and its score a popcount, never a rescan of `sets`.
  const std::size_t words = (sets.size() + 63) / 64;
  std::vector<std::uint64_t> element_mask(u * words, 0);
  for (std::size_t si = 0; si < sets.size(); ++si)
    for (int e : sets[si]) {
      const auto idx = static_cast<std::size_t>(
          std::lower_bound(universe.begin(), universe.end(), e) -
          universe.begin());
      element_mask[idx * words + si / 64] |= std::uint64_t{1} << (si % 64);
    }

  // Candidates live in flat arenas shared by a whole layer (element indices
  // with stride `layer`, masks with stride `words`), so extending the beam
  // never allocates per candidate. Elements are ascending universe indices;
  // the universe is sorted, so index order and value order agree and
  // lexicographic comparisons on slices match comparisons on realized sets.
  struct Cand {
    std::size_t elem_off = 0;
    std::size_t mask_off = 0;
    std::size_t hit = 0;
  };
  std::vector<std::size_t> beam_elems;
  std::vector<std::uint64_t> beam_mask(words, 0);
  std::size_t beam_count = 1;  // layer 0 is the single empty partial
  std::vector<std::size_t> cand_elems, next_elems;
  std::vector<std::uint64_t> cand_mask, next_mask;
  std::vector<Cand> cands;
  auto lex_less = [&cand_elems](const Cand &a, const Cand &b,
                                std::size_t layer) {
    return std::lexicographical_compare(
        cand_elems.begin() + static_cast<std::ptrdiff_t>(a.elem_off),
        cand_elems.begin() + static_cast<std::ptrdiff_t>(a.elem_off + layer),
        cand_elems.begin() + static_cast<std::ptrdiff_t>(b.elem_off),
        cand_elems.begin() + static_cast<std::ptrdiff_t>(b.elem_off + layer));
  };

  // Layered by cardinality. Extending only past the largest element yields
  // each subset exactly once; the lex-least completion of the first layer
  // that has one is the answer.
  for (std::size_t layer = 1; layer <= u; ++layer) {
    cands.clear();
    cand_elems.clear();
    cand_mask.clear();
    const std::size_t pstride = layer - 1;
    std::size_t best_complete = std::numeric_limits<std::size_t>::max();
    for (std::size_t p = 0; p < beam_count; ++p) {
      const std::size_t *pe = beam_elems.data() + p * pstride;
      const std::size_t floor = pstride == 0 ? 0 : pe[pstride - 1] + 1;
      for (std::size_t i = floor; i < u; ++i) {
        Cand c;
        c.elem_off = cand_elems.size();
        c.mask_off = cand_mask.size();
        cand_elems.insert(cand_elems.end(), pe, pe + pstride);
        cand_elems.push_back(i);
        std::size_t hit = 0;
        for (std::size_t w = 0; w < words; ++w) {
          const std::uint64_t m =
              beam_mask[p * words + w] | element_mask[i * words + w];
          cand_mask.push_back(m);
          hit += static_cast<std::size_t>(std::popcount(m));
        }
        c.hit = hit;
        cands.push_back(c);
        if (hit == sets.size()) {
          const std::size_t me = cands.size() - 1;
          if (best_complete == std::numeric_limits<std::size_t>::max() ||
              lex_less(cands[me], cands[best_complete], layer))
            best_complete = me;
        }
      }
    }
    if (best_complete != std::numeric_limits<std::size_t>::max()) {
      std::set<int> out;
      const std::size_t off = cands[best_complete].elem_off;
      for (std::size_t k = 0; k < layer; ++k)
        out.insert(universe[cand_elems[off + k]]);
      return out;
    }
    std::sort(cands.begin(), cands.end(),
              [&](const Cand &a, const Cand &b) {
                return a.hit > b.hit ||
                       (a.hit == b.hit && lex_less(a, b, layer));
              });
    if (cands.size() > beam_width) cands.resize(beam_width);
    if (cands.empty()) break;
    next_elems.clear();
    next_mask.clear();
    for (const Cand &c : cands) {
      next_elems.insert(next_elems.end(),
                        cand_elems.begin() +
                            static_cast<std::ptrdiff_t>(c.elem_off),
                        cand_elems.begin() +
                            static_cast<std::ptrdiff_t>(c.elem_off + layer));
      next_mask.insert(next_mask.end(),
                       cand_mask.begin() +
                           static_cast<std::ptrdiff_t>(c.mask_off),
                       cand_mask.begin() +
                           static_cast<std::ptrdiff_t>(c.mask_off + words));
    }
    beam_elems.swap(next_elems);
    beam_mask.swap(next_mask);
    beam_count = cands.size();
  }

  // The beam pruned away every completion. Fall back to plain greedy, which
  // always produces a valid set.
  std::set<int> greedy;
  while (!is_hitting_set(sets, greedy)) {
    int best_element = 0;
    std::size_t best_gain = 0;
    for (int u : universe) {
      if (greedy.count(u)) continue;
      std::size_t gain = 0;
      for (const auto &s : sets) {
        bool already = false;
        for (int e : s)
          if (greedy.count(e)) {
            already = true;
            break;
          }
        if (!already && s.count(u)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_element = u;
      }
    }
    if (best_gain == 0)
      throw InternalError("greedy hitting set fallback stalled");
    greedy.insert(best_element);
  }
  return greedy;
}

std::set<int> minimal_rule_set_selection(
    const std::vector<std::vector<std::set<int>>> &families) {
  if (families.empty()) return {};
  for (const auto &family : families)
    if (family.empty())
      throw InputError("a family without candidate sets cannot be satisfied");

  auto satisfied = [](const std::vector<std::set<int>> &family,
                      const std::set<int> &h) {
    for (const auto &t : family)
      if (std::includes(h.begin(), h.end(), t.begin(), t.end())) return true;
    return false;
  };
  auto all_satisfied = [&](const std::set<int> &h) {
    for (const auto &family : families)
      if (!satisfied(family, h)) return false;
    return true;
  };

  std::set<int> universe_set;
  for (const auto &family : families)
    for (const auto &t : family) universe_set.insert(t.begin(), t.end());
  std::vector<int> universe(universe_set.begin(), universe_set.end());

  if (universe.size() <= 12) {
    for (std::size_t k = 0; k <= universe.size(); ++k) {
      std::set<int> found;
      bool ok =
          for_each_k_subset(universe, k, [&](const std::set<int> &subset) {
            if (!all_satisfied(subset)) return false;
            found = subset;
            return true;
          });
      if (ok) return found;
    }
    throw InternalError("selection failed although every family has a candidate");
  }

  // Larger universes: add whole candidate sets greedily, cheapest completion
  // first, most newly satisfied families as the tie-break.
  std::set<int> h;
  while (!all_satisfied(h)) {
    std::set<int> best_addition;
    std::size_t best_cost = 0;
    std::size_t best_gain = 0;
    bool have_best = false;
    for (const auto &family : families) {
      if (satisfied(family, h)) continue;
      for (const auto &t : family) {
        std::set<int> addition;
        for (int e : t)
          if (!h.count(e)) addition.insert(e);
        std::set<int> merged = h;
        merged.insert(addition.begin(), addition.end());
        std::size_t gain = 0;
        for (const auto &f2 : families)
          if (!satisfied(f2, h) && satisfied(f2, merged)) ++gain;
        const bool better =
            !have_best || addition.size() < best_cost ||
            (addition.size() == best_cost &&
             (gain > best_gain ||
              (gain == best_gain && addition < best_addition)));
        if (better) {
          have_best = true;
          best_addition = std::move(addition);
          best_cost = best_addition.size();
          best_gain = gain;
        }
      }
    }
    if (!have_best)
      throw InternalError("greedy selection found no applicable candidate");
    h.insert(best_addition.begin(), best_addition.end());
  }
  return h;
}

DisambiguationOutcome disambiguate(
    Grammar &g, const std::vector<const LabeledDigraph *> &graphs,
    const std::map<int, std::vector<int>> &recorded_parses,
    const EnumerationOptions &enum_opts, HittingSetSolver solver,
    std::size_t hs_beam_width, std::size_t jobs,
    DisambiguationStats *stats) {
  using Clock = std::chrono::steady_clock;
  const auto enum_start = Clock::now();

  // Full derivation sets per graph, computed up front. Parallel sections
  // join in index order so the outcome is order-independent.
  std::vector<std::vector<std::vector<int>>> all_derivs(graphs.size());
  auto enumerate_one = [&](std::size_t i) {
    try {
      return enumerate_derivations(g, *graphs[i], enum_opts);
    } catch (const BudgetError &e) {
      throw BudgetError("graph " + std::to_string(i) + ": " + e.what());
    }
  };
  if (jobs <= 1 || graphs.size() <= 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i)
      all_derivs[i] = enumerate_one(i);
  } else {
    // Waves of at most `jobs` graphs, joined in index order.
    for (std::size_t base = 0; base < graphs.size(); base += jobs) {
      const std::size_t end = std::min(graphs.size(), base + jobs);
      std::vector<std::future<std::vector<std::vector<int>>>> wave;
      for (std::size_t i = base; i < end; ++i)
        wave.push_back(std::async(std::launch::async,
                                  [&, i] { return enumerate_one(i); }));
      for (std::size_t i = base; i < end; ++i)
        all_derivs[i] = wave[i - base].get();
    }
  }
  if (stats != nullptr)
    stats->enumeration_seconds +=
        std::chrono::duration<double>(Clock::now() - enum_start).count();

  for (const auto &[index, parse] : recorded_parses) {
    const auto &derivs = all_derivs.at(static_cast<std::size_t>(index));
    if (std::find(derivs.begin(), derivs.end(), parse) == derivs.end())
      throw InternalError("recorded parse of graph " + std::to_string(index) +
                          " is missing from its enumerated derivations");
  }

  // The stats bucket counts solver time only, so runs that differ in
  // nothing but the hitting-set solver are compared on exactly that work.
  double solver_seconds = 0;
  // One family of candidate eliminations per graph that has any singleton
  // rule-set group; each candidate is the minimal elimination isolating one
  // such group.
  std::vector<std::vector<std::set<int>>> families;
  std::vector<std::size_t> family_owner;
  DisambiguationOutcome outcome;
  std::vector<bool> pre_lost(graphs.size(), false);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto &derivs = all_derivs[i];
    std::map<std::set<int>, std::vector<std::size_t>> groups;
    for (std::size_t d = 0; d < derivs.size(); ++d)
      groups[std::set<int>(derivs[d].begin(), derivs[d].end())].push_back(d);

    std::vector<std::set<int>> family;
    for (const auto &[rule_set, members] : groups) {
      if (members.size() != 1) continue;
      const auto &keep = derivs[members.front()];
      std::vector<std::set<int>> elim_sets;
      bool feasible = true;
      for (std::size_t d = 0; d < derivs.size(); ++d) {
        if (derivs[d] == keep) continue;
        std::set<int> extra;
        for (int r : derivs[d])
          if (!rule_set.count(r)) extra.insert(r);
        if (extra.empty()) {
          // This rival uses only the keeper's rules; no elimination can
          // remove it without removing the keeper too.
          feasible = false;
          break;
        }
        elim_sets.push_back(std::move(extra));
      }
      if (!feasible) continue;
      if (stats != nullptr) stats->instances.push_back(elim_sets);
      const auto call_start = Clock::now();
      std::set<int> hs = solver == HittingSetSolver::Exact
                             ? exact_hitting_set(elim_sets)
                             : beam_hitting_set(elim_sets, hs_beam_width);
      solver_seconds +=
          std::chrono::duration<double>(Clock::now() - call_start).count();
      family.push_back(std::move(hs));
    }
    if (family.empty()) {
      pre_lost[i] = true;
      continue;
    }
    families.push_back(std::move(family));
    family_owner.push_back(i);
  }

  outcome.eliminated_rules = minimal_rule_set_selection(families);
  if (stats != nullptr) stats->hitting_set_seconds += solver_seconds;

  if (!outcome.eliminated_rules.empty()) {
    std::vector<Rule> kept_rules;
    for (Rule &r : g.rules)
      if (!outcome.eliminated_rules.count(r.id))
        kept_rules.push_back(std::move(r));
    g.rules = std::move(kept_rules);
  }

  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (pre_lost[i]) {
      outcome.lost.push_back(static_cast<int>(i));
      continue;
    }
    std::vector<const std::vector<int> *> survivors;
    for (const auto &d : all_derivs[i]) {
      bool eliminated = false;
      for (int r : d)
        if (outcome.eliminated_rules.count(r)) {
          eliminated = true;
          break;
        }
      if (!eliminated) survivors.push_back(&d);
    }
    if (survivors.size() == 1) {
      outcome.retained.push_back(static_cast<int>(i));
      outcome.parse_by_graph[static_cast<int>(i)] = *survivors.front();
    } else {
      outcome.lost.push_back(static_cast<int>(i));
    }
  }

  // Filtering the pre-computed derivations must agree with enumerating over
  // the pruned grammar; re-run the enumeration to hold that invariant.
  const auto verify_start = Clock::now();
  for (int i : outcome.retained) {
    auto derivs =
        enumerate_derivations(g, *graphs[static_cast<std::size_t>(i)],
                              enum_opts);
    if (derivs.size() != 1 || derivs.front() != outcome.parse_by_graph[i])
      throw InternalError(
          "post-elimination verification failed for graph " +
          std::to_string(i));
  }
  if (stats != nullptr)
    stats->enumeration_seconds +=
        std::chrono::duration<double>(Clock::now() - verify_start).count();
  return outcome;
}

}  // namespace ednce
