#include "epiupdate/action.hpp"

#include <algorithm>
#include <unordered_set>

#include "epiupdate/checker.hpp"

namespace epi {

ActionModel::ActionModel(std::string name, Agents agents, std::vector<std::string> action_names,
                         std::vector<Partition> relations, std::vector<Formula> preconditions)
    : name_(std::move(name)),
      agents_(std::move(agents)),
      names_(std::move(action_names)),
      relations_(std::move(relations)),
      pre_(std::move(preconditions)) {
  if (names_.empty()) throw ModelError("action model '" + name_ + "' has no actions");
  if (pre_.size() != names_.size())
    throw ModelError("action model '" + name_ + "' needs one precondition per action");
  if (relations_.size() != agents_.size())
    throw ModelError("action model '" + name_ + "' needs one relation per agent");
  for (const auto& r : relations_)
    if (r.size() != names_.size())
      throw ModelError("a relation of action model '" + name_ + "' does not cover the actions");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second)
      throw ModelError("duplicate action '" + n + "' in action model '" + name_ + "'");
}

std::size_t ActionModel::action(std::string_view name) const {
  if (auto e = find_action(name)) return *e;
  throw ModelError("unknown action '" + std::string(name) + "' in action model '" + name_ + "'");
}

std::optional<std::size_t> ActionModel::find_action(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

ActionModel ActionModel::with_trace(GraphTrace trace) const {
  if (trace.graphs.size() != size()) throw ModelError("graph trace needs one entry per action");
  for (const auto& g : trace.graphs)
    if (g.size() != trace.patterns.size()) throw ModelError("graph trace length mismatch");
  ActionModel out = *this;
  out.trace_ = std::move(trace);
  return out;
}

ActionModel ActionModel::renamed(std::string name) const {
  ActionModel out = *this;
  out.name_ = std::move(name);
  return out;
}

bool operator==(const ActionModel& x, const ActionModel& y) {
  return x.name_ == y.name_ && x.agents_ == y.agents_ && x.names_ == y.names_ &&
         x.relations_ == y.relations_ && x.pre_ == y.pre_;
}

MultiPointedActionModel::MultiPointedActionModel(std::shared_ptr<const ActionModel> m,
                                                 std::vector<std::size_t> pts)
    : model(std::move(m)), points(std::move(pts)) {
  if (!model) throw ModelError("missing action model");
  if (points.empty()) throw ModelError("a multi-pointed action model needs a point");
  for (auto e : points)
    if (e >= model->size()) throw ModelError("designated action out of range");
}

MultiPointedActionModel::MultiPointedActionModel(std::shared_ptr<const ActionModel> m)
    : model(std::move(m)) {
  if (!model) throw ModelError("missing action model");
  for (std::size_t e = 0; e < model->size(); ++e) points.push_back(e);
}

ActionProduct action_product(const EpistemicModel& model, const ActionModel& actions,
                             ModelChecker& checker, std::size_t max_worlds) {
  if (!(model.agents() == actions.agents()))
    throw ModelError("action model and model are over different agents");
  const std::size_t n = model.size(), k = actions.size();
  std::vector<const std::vector<char>*> pre;
  for (std::size_t e = 0; e < k; ++e) pre.push_back(&checker.evaluate(model, actions.precondition(e)));

  ActionProduct out;
  out.index.assign(n * k, -1);
  for (WorldId v = 0; v < n; ++v)
    for (std::size_t e = 0; e < k; ++e)
      if ((*pre[e])[v]) {
        out.index[v * k + e] = static_cast<std::int64_t>(out.origin.size());
        out.origin.emplace_back(v, e);
        check_size_limit(out.origin.size(), max_worlds, "action update");
      }

  std::vector<std::string> names;
  std::vector<Valuation> vals;
  for (auto [v, e] : out.origin) {
    names.push_back(model.world_name(v) + "." + actions.action_name(e));
    vals.push_back(model.valuation(v));
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < model.agents().size(); ++a) {
    const auto& rm = model.relation(a);
    const auto& ru = actions.relation(a);
    std::vector<std::uint64_t> keys;
    keys.reserve(out.origin.size());
    for (auto [v, e] : out.origin)
      keys.push_back(std::uint64_t{rm.block(v)} * ru.block_count() + ru.block(static_cast<WorldId>(e)));
    relations.push_back(partition_by<std::uint64_t>(keys));
  }
  out.model = EpistemicModel(model.agents(), model.vocabulary(), std::move(names), std::move(vals),
                             std::move(relations));
  return out;
}

EpistemicModel action_update(const EpistemicModel& model, const ActionModel& actions,
                             std::size_t max_worlds) {
  ModelChecker checker(max_worlds);
  return action_product(model, actions, checker, max_worlds).model;
}

namespace {

std::string bit_string(const std::vector<char>& bits) {
  std::string out;
  for (char b : bits) out += b ? '1' : '0';
  return out;
}

std::string induced_action_name(const std::string& graph, const std::string& bits) {
  return bits.empty() ? "(" + graph + ")" : "(" + graph + "," + bits + ")";
}

/// Per graph: index of its Ra among the distinct values, for every agent.
struct ViewClasses {
  std::vector<std::vector<std::uint32_t>> of_graph;  // [agent][graph]
  std::vector<std::vector<AgentSet>> sets;           // [agent][class]
};

ViewClasses view_classes(const CommPattern& pattern) {
  ViewClasses out;
  const auto& agents = pattern.agents();
  out.of_graph.resize(agents.size());
  out.sets.resize(agents.size());
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    for (const auto& g : pattern.graphs()) {
      auto ra = g.senders(a);
      auto& sets = out.sets[a];
      auto it = std::find(sets.begin(), sets.end(), ra);
      out.of_graph[a].push_back(static_cast<std::uint32_t>(it - sets.begin()));
      if (it == sets.end()) sets.push_back(ra);
    }
  }
  return out;
}

/// owned[a][class][i]: whether atom i is owned by a member of that class's Ra.
std::vector<std::vector<std::vector<char>>> owned_by_class(const ViewClasses& classes,
                                                           const Agents& agents,
                                                           const std::vector<Atom>& atoms) {
  std::vector<std::vector<std::vector<char>>> out(agents.size());
  for (AgentIndex a = 0; a < agents.size(); ++a)
    for (auto set : classes.sets[a]) {
      std::vector<char> owned(atoms.size());
      for (std::size_t i = 0; i < atoms.size(); ++i)
        owned[i] = agents.contains(atoms[i].owner) && set.contains(agents.index(atoms[i].owner));
      out[a].push_back(std::move(owned));
    }
  return out;
}

}  // namespace

ActionModel induced_action_model(std::shared_ptr<const CommPattern> pattern,
                                 const std::vector<Atom>& atoms, std::size_t max_actions) {
  const auto vocab = normalized(atoms);
  const auto& agents = pattern->agents();
  const std::size_t m = vocab.size(), k = pattern->size();
  if (m >= 63 || (std::size_t{1} << m) > max_actions / k)
    throw LimitError("induced action model would have more than " + std::to_string(max_actions) +
                     " actions");
  const std::size_t subsets = std::size_t{1} << m;
  const auto classes = view_classes(*pattern);
  const auto owned = owned_by_class(classes, agents, vocab);

  std::vector<std::string> names;
  std::vector<Formula> pre;
  GraphTrace trace;
  trace.patterns = {pattern};
  std::vector<std::vector<char>> bits_of(subsets, std::vector<char>(m));
  for (std::size_t mask = 0; mask < subsets; ++mask)
    for (std::size_t i = 0; i < m; ++i) bits_of[mask][i] = (mask >> (m - 1 - i)) & 1u;

  for (std::size_t j = 0; j < k; ++j) {
    const auto gname = graph_name(agents, pattern->graph(j));
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Atom> positive;
      for (std::size_t i = 0; i < m; ++i)
        if (bits_of[mask][i]) positive.push_back(vocab[i]);
      names.push_back(induced_action_name(gname, bit_string(bits_of[mask])));
      pre.push_back(description(positive, vocab));
      trace.graphs.push_back({j});
    }
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    std::vector<std::uint64_t> keys;
    keys.reserve(k * subsets);
    for (std::size_t j = 0; j < k; ++j) {
      const auto c = classes.of_graph[a][j];
      std::uint64_t visible_mask = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (owned[a][c][i]) visible_mask |= std::uint64_t{1} << (m - 1 - i);
      for (std::size_t mask = 0; mask < subsets; ++mask)
        keys.push_back((std::uint64_t{c} << m) | (mask & visible_mask));
    }
    relations.push_back(partition_by<std::uint64_t>(keys));
  }
  ActionModel out("U(" + pattern->name() + ")", agents, std::move(names), std::move(relations),
                  std::move(pre));
  return out.with_trace(std::move(trace));
}

ActionProduct induced_update(const EpistemicModel& model, const CommPattern& pattern,
                             const std::vector<Atom>& atoms, std::size_t max_worlds) {
  if (!(model.agents() == pattern.agents()))
    throw ModelError("pattern and model are over different agents");
  const auto vocab = normalized(atoms);
  const auto& agents = pattern.agents();
  const std::size_t n = model.size(), k = pattern.size(), m = vocab.size();
  check_size_limit(n * k, max_worlds, "induced update");
  const auto classes = view_classes(pattern);
  const auto owned = owned_by_class(classes, agents, vocab);

  // bits[v][i]: atom i of the induced vocabulary holds at v.
  std::vector<std::int64_t> model_index(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto idx = model.atom_index(vocab[i]);
    model_index[i] = idx ? static_cast<std::int64_t>(*idx) : -1;
  }
  std::vector<std::vector<char>> bits(n, std::vector<char>(m));
  for (WorldId v = 0; v < n; ++v)
    for (std::size_t i = 0; i < m; ++i)
      bits[v][i] = model_index[i] >= 0 && model.holds(v, static_cast<std::uint32_t>(model_index[i]));

  std::vector<std::string> graph_names;
  for (const auto& g : pattern.graphs()) graph_names.push_back(graph_name(agents, g));

  ActionProduct out;
  std::vector<std::string> names;
  std::vector<Valuation> vals;
  names.reserve(n * k);
  vals.reserve(n * k);
  out.origin.reserve(n * k);
  for (WorldId v = 0; v < n; ++v) {
    const auto b = bit_string(bits[v]);
    for (std::size_t j = 0; j < k; ++j) {
      out.origin.emplace_back(v, j);
      names.push_back(model.world_name(v) + "." + induced_action_name(graph_names[j], b));
      vals.push_back(model.valuation(v));
    }
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    const auto& rm = model.relation(a);
    std::vector<std::vector<std::uint32_t>> keys;
    keys.reserve(n * k);
    for (WorldId v = 0; v < n; ++v)
      for (std::size_t j = 0; j < k; ++j) {
        const auto c = classes.of_graph[a][j];
        std::vector<std::uint32_t> key{rm.block(v), c};
        for (std::size_t i = 0; i < m; ++i)
          if (owned[a][c][i] && bits[v][i]) key.push_back(static_cast<std::uint32_t>(i));
        keys.push_back(std::move(key));
      }
    relations.push_back(partition_by<std::vector<std::uint32_t>, IndexVectorHash>(keys));
  }
  out.model = EpistemicModel(model.agents(), model.vocabulary(), std::move(names), std::move(vals),
                             std::move(relations));
  return out;
}

ActionModel compose(std::shared_ptr<const ActionModel> first, const ActionModel& second) {
  if (!(first->agents() == second.agents()))
    throw ModelError("composed action models are over different agents");
  const auto& agents = first->agents();
  const std::size_t k1 = first->size(), k2 = second.size();
  std::vector<std::string> names;
  std::vector<Formula> pre;
  for (std::size_t e = 0; e < k1; ++e)
    for (std::size_t f = 0; f < k2; ++f) {
      names.push_back(first->action_name(e) + ";" + second.action_name(f));
      pre.push_back(Formula::conjunction(first->precondition(e),
                                         Formula::action_update(first, e, second.precondition(f))));
    }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    std::vector<std::uint64_t> keys;
    const auto& r1 = first->relation(a);
    const auto& r2 = second.relation(a);
    for (std::size_t e = 0; e < k1; ++e)
      for (std::size_t f = 0; f < k2; ++f)
        keys.push_back(std::uint64_t{r1.block(static_cast<WorldId>(e))} * r2.block_count() +
                       r2.block(static_cast<WorldId>(f)));
    relations.push_back(partition_by<std::uint64_t>(keys));
  }
  ActionModel out(first->name() + ";" + second.name(), agents, std::move(names),
                  std::move(relations), std::move(pre));
  if (first->trace() && second.trace()) {
    const auto& t1 = *first->trace();
    const auto& t2 = *second.trace();
    GraphTrace trace;
    trace.patterns = t1.patterns;
    trace.patterns.insert(trace.patterns.end(), t2.patterns.begin(), t2.patterns.end());
    for (std::size_t e = 0; e < k1; ++e)
      for (std::size_t f = 0; f < k2; ++f) {
        auto g = t1.graphs[e];
        g.insert(g.end(), t2.graphs[f].begin(), t2.graphs[f].end());
        trace.graphs.push_back(std::move(g));
      }
    out = out.with_trace(std::move(trace));
  }
  return out;
}

ActionModel model_as_action_model(const EpistemicModel& model, const std::vector<Atom>& atoms,
                                  std::string name) {
  const auto vocab = normalized(atoms);
  std::vector<Formula> pre;
  for (WorldId w = 0; w < model.size(); ++w) {
    std::vector<Atom> positive;
    for (const auto& atom : vocab)
      if (model.holds(w, atom)) positive.push_back(atom);
    pre.push_back(description(positive, vocab));
  }
  return ActionModel(std::move(name), model.agents(), model.world_names(), model.relations(),
                     std::move(pre));
}

ActionModel skip_action_model(const Agents& agents) {
  return ActionModel("skip", agents, {"skip"},
                     std::vector<Partition>(agents.size(), Partition::total(1)), {Formula::top()});
}

ActionModel public_announcement(const Agents& agents, Formula announced, std::string name) {
  return ActionModel(std::move(name), agents, {"e"},
                     std::vector<Partition>(agents.size(), Partition::total(1)),
                     {std::move(announced)});
}

}  // namespace epi
