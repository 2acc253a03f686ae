#include "epiupdate/search.hpp"

#include <algorithm>

#include "epiupdate/bisim.hpp"
#include "epiupdate/checker.hpp"

namespace epi {

namespace {

/// An update result: the product and the worlds standing for the point.
struct Outcome {
  EpistemicModel model;
  std::vector<WorldId> points;
};

Outcome apply_pattern(const EpistemicModel& model, WorldId w, const CommPattern& pattern,
                      std::optional<std::size_t> point) {
  Outcome out{pattern_update(model, pattern), {}};
  const auto k = pattern.size();
  if (point) {
    out.points.push_back(static_cast<WorldId>(w * k + *point));
  } else {
    for (std::size_t j = 0; j < k; ++j) out.points.push_back(static_cast<WorldId>(w * k + j));
  }
  return out;
}

Outcome apply_target(const EpistemicModel& model, WorldId w, const UpdateSpec& target) {
  if (const auto* p = std::get_if<PatternTarget>(&target))
    return apply_pattern(model, w, *p->pattern, p->point);
  const auto& u = std::get<MultiPointedActionModel>(target);
  ModelChecker checker;
  auto product = action_product(model, *u.model, checker);
  Outcome out{std::move(product.model), {}};
  for (auto e : u.points) {
    auto idx = product.index[w * u.model->size() + e];
    if (idx >= 0) out.points.push_back(static_cast<WorldId>(idx));
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

std::size_t default_cap(const Agents& agents, std::size_t graph_count) {
  return agents.size() <= 2 ? graph_count : std::min<std::size_t>(4, graph_count);
}

/// Calls `visit` on every k-subset of {0..n-1} in lexicographic order until it returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SearchReport search_patterns(const std::vector<PointedModel>& bases, const UpdateSpec& target,
                             const SearchOptions& options) {
  if (bases.empty()) throw ModelError("search needs at least one base model");
  const auto& agents = bases.front().model.agents();
  for (const auto& b : bases)
    if (!(b.model.agents() == agents)) throw ModelError("base models are over different agents");

  const auto graphs = enumerate_graphs(agents);
  SearchReport report;
  report.graph_count = graphs.size();
  report.max_pattern_size = options.max_pattern_size ? std::min(options.max_pattern_size, graphs.size())
                                                     : default_cap(agents, graphs.size());
  report.whole_space = report.max_pattern_size == graphs.size();

  // Target results per base point, computed once.
  std::vector<std::vector<Outcome>> targets(bases.size());
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (auto w : bases[b].points) targets[b].push_back(apply_target(bases[b].model, w, target));

  for (std::size_t size = 1; size <= report.max_pattern_size; ++size) {
    const bool done = for_each_subset(graphs.size(), size, [&](const std::vector<std::size_t>& idx) {
      std::vector<CommGraph> chosen;
      for (auto i : idx) chosen.push_back(graphs[i]);
      std::string name;
      for (const auto& g : chosen) name += (name.empty() ? "" : ",") + graph_name(agents, g);
      CandidateOutcome outcome{CommPattern("{" + name + "}", agents, chosen)};
      outcome.equivalent = true;
      for (std::size_t b = 0; b < bases.size() && outcome.equivalent; ++b) {
        const auto& base = bases[b];
        for (std::size_t i = 0; i < base.points.size(); ++i) {
          const auto& t = targets[b][i];
          if (t.points.empty()) {
            outcome = CandidateOutcome{outcome.pattern, false, b, base.points[i], true};
            break;
          }
          auto mine = apply_pattern(base.model, base.points[i], outcome.pattern, std::nullopt);
          if (!bisimilar(mine.model, mine.points, t.model, t.points)) {
            outcome = CandidateOutcome{outcome.pattern, false, b, base.points[i], false};
            break;
          }
        }
      }
      report.outcomes.push_back(outcome);
      if (outcome.equivalent) {
        report.found = outcome.pattern;
        return true;
      }
      return false;
    });
    if (done) break;
  }
  return report;
}

std::optional<CommPattern> find_equivalent_pattern(const std::vector<PointedModel>& bases,
                                                   const UpdateSpec& target,
                                                   const SearchOptions& options) {
  return search_patterns(bases, target, options).found;
}

std::size_t witness_round_for_depth(std::size_t modal_depth) {
  const std::size_t bound = 2 * (modal_depth + 1);
  std::size_t n = 0;
  std::size_t power = 1;
  while (power <= bound) {
    power *= 3;
    ++n;
  }
  return n;
}

std::size_t witness_round(const ActionModel& model) {
  return witness_round_for_depth(modal_depth(model));
}

bool check_circular_chain(const EpistemicModel& model) {
  if (model.agents().size() != 2) throw ModelError("circular ab-chains are defined for two agents");
  const std::size_t n = model.size();
  if (n < 4 || n % 2 != 0) return false;
  std::vector<std::vector<WorldId>> partner(2, std::vector<WorldId>(n));
  for (AgentIndex a = 0; a < 2; ++a) {
    for (const auto& block : model.relation(a).blocks()) {
      if (block.size() != 2) return false;
      partner[a][block[0]] = block[1];
      partner[a][block[1]] = block[0];
    }
  }
  WorldId w = 0;
  std::size_t steps = 0;
  do {
    w = partner[steps % 2][w];
    ++steps;
  } while (w != 0 && steps <= n);
  return w == 0 && steps == n;
}

FreshVariableCounterexample fresh_variable_counterexample(const ActionModel& actions,
                                                          const std::vector<Atom>& workspace_atoms) {
  const auto& agents = actions.agents();
  if (agents.size() < 2) throw ModelError("the counterexample needs two agents");
  std::vector<Atom> used;
  for (const auto& pre : actions.preconditions()) {
    auto atoms = pre.atoms();
    used.insert(used.end(), atoms.begin(), atoms.end());
  }
  used = normalized(std::move(used));
  const auto vocab = normalized(workspace_atoms);
  std::optional<Atom> fresh;
  for (const auto& atom : vocab)
    if (!atom.is_history() && !std::binary_search(used.begin(), used.end(), atom)) {
      fresh = atom;
      break;
    }
  if (!fresh) throw ModelError("every declared atom occurs in a precondition; no fresh atom is available");

  const auto sender = agents.index(fresh->owner);
  const AgentIndex receiver = sender == 0 ? 1 : 0;

  std::vector<Atom> others;
  for (const auto& atom : vocab)
    if (!(atom == *fresh) && !atom.is_history()) others.push_back(atom);
  auto with_fresh = others;
  with_fresh.push_back(*fresh);
  ModelBuilder builder(agents, vocab);
  builder.world("w1", with_fresh).world("w2", others);
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    if (a == receiver) builder.blocks(agents.name(a), {{"w1", "w2"}});
    else builder.blocks(agents.name(a), {{"w1"}, {"w2"}});
  }
  auto base = builder.build();

  auto byz = std::make_shared<const CommPattern>(
      "Byz", agents,
      std::vector<CommGraph>{CommGraph::identity(agents.size()),
                             CommGraph::from_edges(agents.size(), {{sender, receiver}})});
  auto by_pattern = pattern_update(base, *byz);
  auto by_action = action_update(base, actions);
  if (by_action.empty()) throw ModelError("the action model cannot be executed on the counterexample model");
  std::vector<WorldId> all_p(by_pattern.size()), all_u(by_action.size());
  for (WorldId w = 0; w < all_p.size(); ++w) all_p[w] = w;
  for (WorldId w = 0; w < all_u.size(); ++w) all_u[w] = w;
  return FreshVariableCounterexample{*fresh, base, byz, PointedModel(std::move(by_pattern), all_p),
                                     PointedModel(std::move(by_action), all_u)};
}

}  // namespace epi
