#include "ednce/induction.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <regex>

#include "ednce/canonical.hpp"
#include "ednce/errors.hpp"
#include "ednce/isomorphism.hpp"

namespace ednce {

std::vector<std::pair<std::size_t, double>> compression_curve(
    const std::vector<TraceEvent> &events) {
  std::vector<std::pair<std::size_t, double>> curve{{0, 1.0}};
  if (events.empty()) return curve;
  const double starting = static_cast<double>(events.front().size_before);
  std::set<int> rules_seen;
  for (const TraceEvent &e : events) {
    rules_seen.insert(e.rule_id);
    curve.emplace_back(rules_seen.size(),
                       static_cast<double>(e.size_after) / starting);
  }
  return curve;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point &start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string iteration_gray(int iteration) {
  return "gray:" + std::to_string(iteration);
}

std::string iteration_black(int iteration) {
  return "black:" + std::to_string(iteration);
}

// The occurrence was grounded in an earlier composite state; contraction of
// a clique sibling may have rewritten the graph since. Checked structurally
// before the occurrence is contracted.
bool occurrence_intact(const LabeledDigraph &h, const LabeledDigraph &pattern,
                       const Occurrence &occ) {
  std::size_t internal_edges = 0;
  for (const auto &[p, hn] : occ.embedding) {
    if (!h.has_node(hn)) return false;
    if (h.node_label(hn) != pattern.node_label(p)) return false;
  }
  for (const Edge &e : h.edges()) {
    if (occ.image.count(e.src) && occ.image.count(e.dst)) ++internal_edges;
  }
  if (internal_edges != pattern.edge_count()) return false;
  for (const Edge &e : pattern.edges()) {
    const auto labels = h.edge_labels_between(occ.embedding.at(e.src),
                                              occ.embedding.at(e.dst));
    if (!labels.count(e.label)) return false;
  }
  return true;
}

bool realization_reproducible(const LabeledDigraph &h, const Occurrence &occ,
                              const Realization &real,
                              std::size_t max_boundary,
                              const std::vector<std::string> &edge_labels) {
  const auto fresh = enumerate_redirections(h, occ, real.occurrence_index,
                                            max_boundary, edge_labels);
  for (const Realization &candidate : fresh) {
    if (candidate.redirection == real.redirection &&
        candidate.kept_label == real.kept_label &&
        candidate.inset == real.inset && candidate.outset == real.outset)
      return true;
  }
  return false;
}

struct CompressionOutcome {
  std::vector<Rule> rules;  // local ids, dense from 0
  // Attempt position -> [initial rule, contractions newest first].
  std::map<int, std::vector<int>> recorded;
  LabeledDigraph final_composite;
  std::map<int, std::size_t> final_component_size;
  std::set<std::string> nonterminal_labels;
};

struct CompressionContext {
  const InductionConfig &cfg;
  const LabelVocabulary &labels;
  Rng *clique_rng = nullptr;
  std::vector<TraceEvent> *trace = nullptr;
  PhaseTimes *times = nullptr;
};

std::vector<std::size_t> solve_clique_with_fallback(
    const std::vector<std::set<std::size_t>> &adjacency,
    const CompressionContext &ctx) {
  CliqueOptions opts;
  opts.solver = ctx.cfg.clique_solver;
  opts.exact_cap = ctx.cfg.clique_exact_cap;
  opts.restarts = ctx.cfg.k_restarts;
  const auto start = Clock::now();
  std::vector<std::size_t> clique;
  try {
    clique = solve_max_clique(adjacency, opts, ctx.clique_rng);
  } catch (const BudgetError &) {
    if (opts.solver != CliqueSolver::Exact) throw;
    // Above the exact cap the instance degrades to the approximation, the
    // same tier the flag would select globally.
    opts.solver = CliqueSolver::Approx;
    clique = solve_max_clique(adjacency, opts, ctx.clique_rng);
  }
  if (ctx.times != nullptr) ctx.times->clique_seconds += seconds_since(start);
  return clique;
}

struct EvaluatedPattern {
  CompatInstance instance;
  std::vector<std::size_t> clique;
  std::size_t gain = 0;
  std::size_t daughter_size = 0;
};

EvaluatedPattern evaluate_pattern(const LabeledDigraph &composite,
                                  const LabeledDigraph &pattern,
                                  const std::string &gray_label,
                                  const std::set<Instruction> *required,
                                  const CompressionContext &ctx) {
  EvaluatedPattern out;
  const auto ground_start = Clock::now();
  out.instance = build_compat_instance(composite, pattern, {gray_label},
                                       ctx.cfg.redirection_cap,
                                       ctx.labels.edge_labels, required);
  if (ctx.times != nullptr)
    ctx.times->mining_seconds += seconds_since(ground_start);
  out.clique = solve_clique_with_fallback(out.instance.adjacency, ctx);
  out.daughter_size = pattern.node_count();
  out.gain = out.clique.size() * (out.daughter_size - 1);
  return out;
}

// Contracts every still-valid clique member, appends the trace event, and
// records per-graph bookkeeping. Returns the number contracted.
std::size_t contract_clique(LabeledDigraph &composite,
                            std::map<NodeId, int> &origin,
                            std::size_t &nt_counter,
                            const EvaluatedPattern &eval, const Rule &rule,
                            int iteration, int &step_counter,
                            std::vector<std::pair<int, int>> &contractions,
                            const CompressionContext &ctx) {
  const std::size_t size_before = composite.node_count();
  const auto start = Clock::now();
  std::size_t contracted = 0;
  for (std::size_t idx : eval.clique) {
    const Realization &real = eval.instance.realizations[idx];
    const Occurrence &occ = eval.instance.occurrences[real.occurrence_index];
    if (!occurrence_intact(composite, rule.daughter, occ)) continue;
    if (!realization_reproducible(composite, occ, real,
                                  ctx.cfg.redirection_cap,
                                  ctx.labels.edge_labels))
      continue;
    NodeId fresh = "nt" + std::to_string(nt_counter++);
    while (composite.has_node(fresh)) fresh += "_";
    const int position = origin.at(*occ.image.begin());
    LabeledDigraph next =
        contract_occurrence(composite, occ, real, rule.lhs, fresh);
    composite = std::move(next);
    for (const NodeId &n : occ.image) origin.erase(n);
    origin[fresh] = position;
    contractions.emplace_back(rule.id, position);
    ++contracted;
  }
  if (ctx.times != nullptr)
    ctx.times->contraction_seconds += seconds_since(start);
  if (contracted == 0)
    throw InternalError("every member of an accepted clique went stale");
  if (ctx.trace != nullptr) {
    TraceEvent e;
    e.iteration = iteration;
    e.step = step_counter++;
    e.rule_id = rule.id;
    e.clique_size = contracted;
    e.motif_size = eval.daughter_size;
    e.size_before = size_before;
    e.size_after = composite.node_count();
    ctx.trace->push_back(e);
  }
  return contracted;
}

// One iteration's compression: exhaust reuse of the rules found so far, then
// mine one more motif, until no motif's best clique reaches size 2.
CompressionOutcome compress_attempt(
    const std::vector<std::pair<int, const LabeledDigraph *>> &attempt,
    int iteration, const CompressionContext &ctx) {
  LabeledDigraph composite;
  std::map<NodeId, int> origin;
  for (std::size_t pos = 0; pos < attempt.size(); ++pos) {
    const std::string prefix = std::to_string(pos) + ".";
    const LabeledDigraph &g = *attempt[pos].second;
    for (const auto &[n, label] : g.nodes()) {
      composite.add_node(prefix + n, label);
      origin[prefix + n] = static_cast<int>(pos);
    }
    for (const Edge &e : g.edges())
      composite.add_edge(prefix + e.src, prefix + e.dst, e.label);
  }

  const std::string gray_label = iteration_gray(iteration);
  const std::string black_label = iteration_black(iteration);
  CompressionOutcome out;
  out.nonterminal_labels = {gray_label, black_label};
  std::vector<std::pair<int, int>> contractions;  // (local rule id, position)
  std::size_t nt_counter = 0;
  int step_counter = 0;

  bool improved = true;
  while (improved) {
    improved = false;

    // Reuse pass: contract the best clique of any existing rule, repeating
    // until none yields a positive gain.
    while (true) {
      std::optional<std::size_t> best_rule;
      std::optional<EvaluatedPattern> best_eval;
      CanonicalKey best_key;
      for (std::size_t r = 0; r < out.rules.size(); ++r) {
        const Rule &rule = out.rules[r];
        EvaluatedPattern eval =
            evaluate_pattern(composite, rule.daughter, gray_label,
                             &rule.instructions, ctx);
        if (eval.clique.empty() || eval.gain < 1) continue;
        const CanonicalKey key = canonical_key(rule.daughter);
        const bool better =
            !best_rule.has_value() || eval.gain > best_eval->gain ||
            (eval.gain == best_eval->gain &&
             (eval.daughter_size > best_eval->daughter_size ||
              (eval.daughter_size == best_eval->daughter_size &&
               (key < best_key ||
                (key == best_key && rule.id < out.rules[*best_rule].id)))));
        if (better) {
          best_rule = r;
          best_eval = std::move(eval);
          best_key = key;
        }
      }
      if (!best_rule.has_value()) break;
      contract_clique(composite, origin, nt_counter, *best_eval,
                      out.rules[*best_rule], iteration, step_counter,
                      contractions, ctx);
    }

    // Mining round: one fresh motif, accepted only when at least two
    // occurrences contract together.
    MineOptions mine_opts;
    mine_opts.beam_width = ctx.cfg.beam_width;
    mine_opts.max_motif_size = ctx.cfg.max_motif_size;
    mine_opts.top_n = ctx.cfg.top_n;
    const auto mine_start = Clock::now();
    const std::vector<Motif> motifs =
        mine_motifs(composite, {gray_label}, mine_opts);
    if (ctx.times != nullptr)
      ctx.times->mining_seconds += seconds_since(mine_start);

    std::optional<std::size_t> best_motif;
    std::optional<EvaluatedPattern> best_eval;
    for (std::size_t m = 0; m < motifs.size(); ++m) {
      EvaluatedPattern eval = evaluate_pattern(composite, motifs[m].pattern,
                                               gray_label, nullptr, ctx);
      if (eval.clique.size() < 2) continue;
      const bool better =
          !best_motif.has_value() || eval.gain > best_eval->gain ||
          (eval.gain == best_eval->gain &&
           (eval.daughter_size > best_eval->daughter_size ||
            (eval.daughter_size == best_eval->daughter_size &&
             motifs[m].key < motifs[*best_motif].key)));
      if (better) {
        best_motif = m;
        best_eval = std::move(eval);
      }
    }
    if (best_motif.has_value()) {
      Rule rule;
      rule.id = static_cast<int>(out.rules.size());
      rule.lhs = gray_label;
      rule.daughter = motifs[*best_motif].pattern;
      rule.instructions = or_reduce(best_eval->instance, best_eval->clique);
      out.rules.push_back(rule);
      contract_clique(composite, origin, nt_counter, *best_eval,
                      out.rules.back(), iteration, step_counter, contractions,
                      ctx);
      improved = true;
    }
  }

  // Every remaining component becomes (or reuses) an initial rule under the
  // iteration's start label, closing each graph's parse.
  out.final_composite = composite;
  std::vector<std::pair<CanonicalKey, int>> initial_rules;
  std::map<int, int> initial_by_position;
  for (const std::set<NodeId> &component :
       weakly_connected_components(composite)) {
    const int position = origin.at(*component.begin());
    out.final_component_size[position] = component.size();
    const LabeledDigraph sub = induced_subgraph(composite, component);
    const LabeledDigraph daughter = relabel_canonically(sub);
    const CanonicalKey key = canonical_key(daughter);
    int rule_id = -1;
    for (const auto &[existing_key, existing_id] : initial_rules) {
      if (existing_key == key &&
          is_isomorphic(out.rules[existing_id].daughter, daughter)) {
        rule_id = existing_id;
        break;
      }
    }
    if (rule_id < 0) {
      Rule rule;
      rule.id = static_cast<int>(out.rules.size());
      rule.lhs = black_label;
      rule.daughter = daughter;
      out.rules.push_back(rule);
      initial_rules.emplace_back(key, rule.id);
      rule_id = rule.id;
    }
    initial_by_position[position] = rule_id;
  }

  for (std::size_t pos = 0; pos < attempt.size(); ++pos) {
    const int position = static_cast<int>(pos);
    std::vector<int> parse{initial_by_position.at(position)};
    for (auto it = contractions.rbegin(); it != contractions.rend(); ++it)
      if (it->second == position) parse.push_back(it->first);
    out.recorded[position] = std::move(parse);
  }
  return out;
}

struct SubGrammarResult {
  int iteration = 0;
  std::vector<Rule> rules;  // local ids, possibly sparse after pruning
  std::map<int, std::vector<int>> parses;  // dataset index -> local rule ids
  std::map<int, std::size_t> final_component_size;  // dataset index -> nodes
};

LabelVocabulary sub_vocabulary(const LabelVocabulary &base, int iteration) {
  LabelVocabulary v = base;
  auto ensure = [&v](const std::string &label) {
    if (std::find(v.nonterminals.begin(), v.nonterminals.end(), label) ==
        v.nonterminals.end())
      v.nonterminals.push_back(label);
  };
  ensure(iteration_gray(iteration));
  ensure(iteration_black(iteration));
  v.start = iteration_black(iteration);
  return v;
}

// Runs induction over one partition bucket. Dataset indices in
// bucket_indices; iteration numbers are drawn from iteration_counter so tags
// stay unique across buckets.
void induce_bucket(const DagDataset &data,
                   const std::vector<int> &bucket_indices,
                   const InductionConfig &cfg, int &iteration_counter,
                   Rng &clique_rng, InductionResult &result,
                   std::vector<SubGrammarResult> &subs) {
  CompressionContext ctx{cfg, data.labels, &clique_rng, &result.trace,
                         &result.times};
  std::vector<int> remaining = bucket_indices;
  bool restrict_to_smallest = false;

  while (!remaining.empty()) {
    if (iteration_counter >= static_cast<int>(cfg.max_iters)) {
      std::string which;
      for (int i : remaining) {
        if (!which.empty()) which += ", ";
        which += std::to_string(i);
      }
      throw BudgetError("induction exceeded max_iters=" +
                        std::to_string(cfg.max_iters) +
                        " with unresolved graphs: " + which);
    }
    const int iteration = iteration_counter++;

    std::vector<int> attempt_indices = remaining;
    if (restrict_to_smallest) {
      int smallest = remaining.front();
      for (int i : remaining) {
        const std::size_t si = data.graphs[i].node_count();
        const std::size_t ss = data.graphs[smallest].node_count();
        if (si < ss || (si == ss && i < smallest)) smallest = i;
      }
      attempt_indices = {smallest};
    }

    std::vector<std::pair<int, const LabeledDigraph *>> attempt;
    for (int i : attempt_indices) attempt.emplace_back(i, &data.graphs[i]);

    CompressionOutcome comp = compress_attempt(attempt, iteration, ctx);

    IterationReport report;
    report.iteration = iteration;
    report.attempted = attempt_indices;
    report.final_composite = comp.final_composite;
    report.nonterminal_labels = comp.nonterminal_labels;

    std::vector<int> retained_positions;
    std::map<int, std::vector<int>> parse_by_position;
    std::set<int> used_rules;
    Grammar sub;
    sub.labels = sub_vocabulary(data.labels, iteration);
    sub.start = iteration_black(iteration);
    sub.rules = comp.rules;

    if (cfg.skip_disambiguation) {
      for (std::size_t pos = 0; pos < attempt.size(); ++pos) {
        retained_positions.push_back(static_cast<int>(pos));
        parse_by_position[static_cast<int>(pos)] =
            comp.recorded.at(static_cast<int>(pos));
      }
    } else {
      std::vector<const LabeledDigraph *> graphs;
      for (const auto &[index, g] : attempt) graphs.push_back(g);
      EnumerationOptions enum_opts;
      enum_opts.max_derivations = cfg.max_derivations_per_graph;
      enum_opts.timeout_seconds = cfg.enum_timeout_seconds;
      DisambiguationStats stats;
      DisambiguationOutcome outcome =
          disambiguate(sub, graphs, comp.recorded, enum_opts, cfg.hitting_set,
                       cfg.hs_beam_width, cfg.jobs, &stats);
      result.times.enumeration_seconds += stats.enumeration_seconds;
      result.times.hitting_set_seconds += stats.hitting_set_seconds;
      for (auto &inst : stats.instances)
        result.hitting_instances.push_back(std::move(inst));
      retained_positions = outcome.retained;
      parse_by_position = outcome.parse_by_graph;
    }

    for (int pos : retained_positions)
      for (int r : parse_by_position.at(pos)) used_rules.insert(r);

    if (retained_positions.empty()) {
      // Nothing survived disambiguation; retry on the single smallest graph,
      // which cannot be ambiguous (its grammar is one initial rule).
      result.iterations.push_back(std::move(report));
      restrict_to_smallest = true;
      continue;
    }
    restrict_to_smallest = false;

    SubGrammarResult srec;
    srec.iteration = iteration;
    for (const Rule &r : sub.rules)
      if (used_rules.count(r.id)) srec.rules.push_back(r);
    std::set<int> retained_set;
    for (int pos : retained_positions) {
      const int dataset_index = attempt[pos].first;
      srec.parses[dataset_index] = parse_by_position.at(pos);
      srec.final_component_size[dataset_index] =
          comp.final_component_size.at(pos);
      retained_set.insert(dataset_index);
      report.retained.push_back(dataset_index);
    }
    subs.push_back(std::move(srec));
    result.iterations.push_back(std::move(report));

    std::vector<int> next_remaining;
    for (int i : remaining)
      if (!retained_set.count(i)) next_remaining.push_back(i);
    remaining = std::move(next_remaining);
  }
}

}  // namespace

InductionResult induce_grammar(const DagDataset &data,
                               const InductionConfig &cfg) {
  const auto total_start = Clock::now();
  validate_dataset(data);
  if (data.graphs.empty())
    throw InputError("dataset contains no graphs to induce from");
  const std::regex tagged("^(black|gray):[0-9]+$");
  for (const std::string &nt : data.labels.nonterminals)
    if (std::regex_match(nt, tagged))
      throw InputError("nonterminal '" + nt +
                       "' collides with iteration-tagged labels");

  // Partitioning: every bucket is its own induction problem; iteration
  // numbers stay globally unique so their tags never collide.
  std::vector<std::vector<int>> buckets;
  if (cfg.partition_by == "none" || cfg.partition_by.empty()) {
    buckets.emplace_back();
    for (std::size_t i = 0; i < data.graphs.size(); ++i)
      buckets.back().push_back(static_cast<int>(i));
  } else if (cfg.partition_by.rfind("size:", 0) == 0) {
    const std::string arg = cfg.partition_by.substr(5);
    std::size_t band = 0;
    try {
      band = static_cast<std::size_t>(std::stoul(arg));
    } catch (const std::exception &) {
      throw InputError("partition size '" + arg + "' is not a number");
    }
    if (band == 0) throw InputError("partition band must be at least 1");
    std::map<std::size_t, std::vector<int>> by_band;
    for (std::size_t i = 0; i < data.graphs.size(); ++i)
      by_band[data.graphs[i].node_count() / band].push_back(
          static_cast<int>(i));
    for (auto &[key, indices] : by_band) buckets.push_back(std::move(indices));
  } else {
    throw InputError("partition_by must be 'none' or 'size:<k>', got '" +
                     cfg.partition_by + "'");
  }

  InductionResult result;
  Rng root(cfg.seed);
  int iteration_counter = 0;
  std::vector<SubGrammarResult> subs;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    Rng clique_rng = root.fork(b);
    induce_bucket(data, buckets[b], cfg, iteration_counter, clique_rng,
                  result, subs);
  }

  // Assemble the compound grammar: sub-grammar rules in iteration order with
  // dense global ids, then one bridge per iteration from the global start,
  // newest iteration first.
  Grammar &g = result.grammar;
  g.labels = data.labels;
  if (g.labels.start.empty()) g.labels.start = "black";
  g.start = g.labels.start;
  auto ensure_nt = [&g](const std::string &label) {
    if (std::find(g.labels.nonterminals.begin(), g.labels.nonterminals.end(),
                  label) == g.labels.nonterminals.end())
      g.labels.nonterminals.push_back(label);
  };
  ensure_nt(g.start);

  std::map<int, std::vector<int>> final_parse;  // dataset index -> global ids
  std::map<int, int> owner_iteration;           // dataset index -> iteration
  std::map<int, std::map<int, int>> local_to_global;  // iteration -> remap
  int next_id = 0;
  for (SubGrammarResult &sub : subs) {
    ensure_nt(iteration_gray(sub.iteration));
    ensure_nt(iteration_black(sub.iteration));
    std::map<int, int> &remap = local_to_global[sub.iteration];
    for (Rule &r : sub.rules) {
      remap[r.id] = next_id;
      r.id = next_id++;
      g.rules.push_back(std::move(r));
    }
    for (const auto &[index, parse] : sub.parses) {
      std::vector<int> mapped;
      for (int local : parse) mapped.push_back(remap.at(local));
      final_parse[index] = std::move(mapped);
      owner_iteration[index] = sub.iteration;
    }
  }
  std::map<int, int> bridge_by_iteration;
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    if (bridge_by_iteration.count(it->iteration)) continue;
    Rule bridge;
    bridge.id = next_id++;
    bridge.lhs = g.start;
    bridge.daughter.add_node("0", iteration_black(it->iteration));
    bridge_by_iteration[it->iteration] = bridge.id;
    g.rules.push_back(std::move(bridge));
  }
  for (auto &[index, parse] : final_parse)
    parse.insert(parse.begin(),
                 bridge_by_iteration.at(owner_iteration.at(index)));

  // Trace events were logged with iteration-local rule ids. Rules that made
  // it into the compound grammar get their global id; rules discarded with a
  // failed iteration or pruned during disambiguation get a unique negative
  // id so the per-iteration rule counts stay exact.
  for (TraceEvent &e : result.trace) {
    const auto sub_it = local_to_global.find(e.iteration);
    if (sub_it != local_to_global.end() && sub_it->second.count(e.rule_id))
      e.rule_id = sub_it->second.at(e.rule_id);
    else
      e.rule_id = -(e.rule_id + 2);
  }

  validate_grammar(g);

  result.initial_size = 0;
  for (const LabeledDigraph &graph : data.graphs)
    result.initial_size += graph.node_count();
  result.pre_termination_size = 0;
  for (const SubGrammarResult &sub : subs)
    for (const auto &[index, size] : sub.final_component_size)
      result.pre_termination_size += size;
  result.post_termination_size = data.graphs.size();

  // The per-iteration unambiguity proof does not cover derivations that slip
  // across sub-grammars through a different bridge. Verify the compound
  // grammar directly and, when extra derivations exist, eliminate a minimal
  // set of unprotected rules.
  if (!cfg.skip_disambiguation) {
    EnumerationOptions enum_opts;
    enum_opts.max_derivations = cfg.max_derivations_per_graph;
    enum_opts.timeout_seconds = cfg.enum_timeout_seconds;
    std::set<int> protected_rules;
    for (const auto &[index, parse] : final_parse)
      protected_rules.insert(parse.begin(), parse.end());
    bool clean = false;
    while (!clean) {
      clean = true;
      std::vector<std::set<int>> offenders;
      const auto verify_start = Clock::now();
      for (const auto &[index, parse] : final_parse) {
        const auto derivs = enumerate_derivations(
            g, data.graphs[static_cast<std::size_t>(index)], enum_opts);
        if (std::find(derivs.begin(), derivs.end(), parse) == derivs.end())
          throw InternalError("graph " + std::to_string(index) +
                              " lost its recorded derivation in the "
                              "compound grammar");
        for (const auto &d : derivs) {
          if (d == parse) continue;
          std::set<int> removable;
          for (int r : d)
            if (!protected_rules.count(r)) removable.insert(r);
          if (removable.empty())
            throw InternalError(
                "graph " + std::to_string(index) +
                " has a second derivation built entirely from rules other "
                "parses depend on");
          offenders.push_back(std::move(removable));
        }
      }
      result.times.enumeration_seconds += seconds_since(verify_start);
      if (!offenders.empty()) {
        clean = false;
        result.hitting_instances.push_back(offenders);
        const auto hs_start = Clock::now();
        std::set<int> eliminate;
        if (cfg.hitting_set == HittingSetSolver::Beam) {
          eliminate = beam_hitting_set(offenders, cfg.hs_beam_width);
        } else {
          try {
            eliminate = exact_hitting_set(offenders);
          } catch (const BudgetError &) {
            eliminate = beam_hitting_set(offenders, cfg.hs_beam_width);
          }
        }
        result.times.hitting_set_seconds += seconds_since(hs_start);
        std::vector<Rule> kept;
        for (Rule &r : g.rules)
          if (!eliminate.count(r.id)) kept.push_back(std::move(r));
        g.rules = std::move(kept);
      }
    }
  }

  for (const auto &[index, parse] : final_parse) {
    Parse p;
    p.graph_index = index;
    p.rule_ids = parse;
    result.parses.push_back(std::move(p));
  }
  result.times.total_seconds = seconds_since(total_start);
  return result;
}

}  // namespace ednce
