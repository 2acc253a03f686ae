#include "epiupdate/history.hpp"

#include <algorithm>
#include <map>

#include "epiupdate/checker.hpp"

namespace epi {

// --- View ---------------------------------------------------------------------

ViewPtr View::empty() {
  static const ViewPtr instance(new View());
  return instance;
}

ViewPtr View::node(AgentSet root, std::vector<ViewPtr> children) {
  if (root.empty()) throw ModelError("a view node needs a nonempty root set");
  const bool all_empty = std::all_of(children.begin(), children.end(),
                                     [](const ViewPtr& c) { return c->is_empty(); });
  if (all_empty) {
    children.clear();
  } else {
    if (children.size() != root.size()) throw ModelError("a view needs one child per root member");
    for (const auto& c : children)
      if (c->is_empty()) throw ModelError("view children must all be empty or all nonempty");
  }
  auto v = std::shared_ptr<View>(new View());
  v->empty_ = false;
  v->root_ = root;
  v->children_ = std::move(children);
  return v;
}

std::size_t View::depth() const {
  if (empty_) return 0;
  if (children_.empty()) return 1;
  return 1 + children_.front()->depth();
}

std::string View::serialize(const Agents& agents) const {
  if (empty_) return {};
  const auto root = agents.render(root_);
  if (children_.empty()) return root;
  if (children_.size() == 1) return children_.front()->serialize(agents) + "." + root;
  std::string out = "(";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i) out += ',';
    out += children_[i]->serialize(agents);
  }
  return out + ")." + root;
}

bool operator==(const View& x, const View& y) {
  if (&x == &y) return true;
  if (x.empty_ != y.empty_ || x.root_ != y.root_ || x.children_.size() != y.children_.size())
    return false;
  for (std::size_t i = 0; i < x.children_.size(); ++i)
    if (!(*x.children_[i] == *y.children_[i])) return false;
  return true;
}

ViewPtr view_of(AgentIndex agent, const std::vector<CommGraph>& sigma) {
  if (sigma.empty()) return View::empty();
  const auto& last = sigma.back();
  const std::vector<CommGraph> before(sigma.begin(), sigma.end() - 1);
  const auto root = last.senders(agent);
  std::vector<ViewPtr> children;
  for (auto b : root.members()) children.push_back(view_of(b, before));
  return View::node(root, std::move(children));
}

namespace {

AgentSet parse_agent_set(std::string_view text, const Agents& agents) {
  AgentSet out;
  auto add = [&](std::string_view name) {
    if (!agents.contains(name)) throw ParseError("unknown agent '" + std::string(name) + "' in view");
    auto a = agents.index(name);
    if (out.contains(a)) throw ParseError("repeated agent in view root");
    out = out.with(a);
  };
  if (text.empty()) throw ParseError("empty agent set in view");
  if (agents.single_char_names()) {
    for (char c : text) add(std::string_view(&c, 1));
  } else {
    std::size_t start = 0;
    while (true) {
      auto plus = text.find('+', start);
      add(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
      if (plus == std::string_view::npos) break;
      start = plus + 1;
    }
  }
  return out;
}

ViewPtr parse_view_rec(std::string_view text, const Agents& agents) {
  // Split at the last top-level dot: children before it, root after.
  int depth = 0;
  std::size_t dot = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    else if (text[i] == ')') --depth;
    else if (text[i] == '.' && depth == 0) dot = i;
    if (depth < 0) throw ParseError("unbalanced parentheses in view");
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in view");
  if (dot == std::string_view::npos) return View::node(parse_agent_set(text, agents), {});
  const auto root = parse_agent_set(text.substr(dot + 1), agents);
  auto prefix = text.substr(0, dot);
  std::vector<std::string_view> parts;
  bool list = false;
  if (!prefix.empty() && prefix.front() == '(') {
    int d = 0;
    std::size_t close = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] == '(') ++d;
      if (prefix[i] == ')' && --d == 0) {
        close = i;
        break;
      }
    }
    list = close + 1 == prefix.size();
  }
  if (list) {
    auto inner = prefix.substr(1, prefix.size() - 2);
    int d = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
      if (i == inner.size() || (inner[i] == ',' && d == 0)) {
        parts.push_back(inner.substr(start, i - start));
        start = i + 1;
      } else if (inner[i] == '(') {
        ++d;
      } else if (inner[i] == ')') {
        --d;
      }
    }
  } else {
    parts.push_back(prefix);
  }
  if (parts.size() != root.size())
    throw ParseError("view root has " + std::to_string(root.size()) + " members but " +
                     std::to_string(parts.size()) + " children");
  std::vector<ViewPtr> children;
  std::size_t child_depth = 0;
  for (auto part : parts) {
    if (part.empty()) throw ParseError("empty child view");
    children.push_back(parse_view_rec(part, agents));
    if (child_depth == 0) child_depth = children.back()->depth();
    if (children.back()->depth() != child_depth) throw ParseError("child views of unequal depth");
  }
  return View::node(root, std::move(children));
}

}  // namespace

ViewPtr parse_view(std::string_view text, const Agents& agents) {
  if (text.empty()) return View::empty();
  try {
    auto v = parse_view_rec(text, agents);
    if (v->serialize(agents) != text) throw ParseError("view is not in canonical form");
    return v;
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
}

Atom history_variable(const Agents& agents, AgentIndex agent, const View& view) {
  if (view.is_empty()) throw ModelError("the empty view has no history variable");
  return Atom::history(view.serialize(agents), agents.name(agent));
}

// --- HistoryModel -------------------------------------------------------------

HistoryModel::HistoryModel(EpistemicModel base) : model_(std::move(base)) {
  for (WorldId w = 0; w < model_.size(); ++w)
    for (auto i : model_.valuation(w))
      if (model_.vocabulary()[i].is_history())
        throw ModelError("history variables are false in a round-0 model");
  base_ = std::make_shared<const EpistemicModel>(model_);
  base_world_.resize(model_.size());
  for (WorldId w = 0; w < model_.size(); ++w) base_world_[w] = w;
  histories_.resize(model_.size());
  views_.assign(model_.size() * model_.agents().size(), View::empty());
}

std::optional<WorldId> HistoryModel::find(WorldId base_world,
                                          const std::vector<CommGraph>& sigma) const {
  for (WorldId w = 0; w < size(); ++w)
    if (base_world_[w] == base_world && histories_[w] == sigma) return w;
  return std::nullopt;
}

namespace {

/// Shares identical views and their history variables across worlds.
class ViewInterner {
 public:
  explicit ViewInterner(const Agents& agents) : agents_(agents) {}

  ViewPtr node(AgentSet root, std::vector<ViewPtr> children) {
    std::vector<const View*> key_children;
    for (const auto& c : children) key_children.push_back(c.get());
    auto key = std::make_pair(root.bits(), key_children);
    auto it = nodes_.find(key);
    if (it != nodes_.end()) return it->second;
    auto v = View::node(root, std::move(children));
    nodes_.emplace(std::move(key), v);
    return v;
  }

  const Atom& variable(const ViewPtr& view, AgentIndex owner) {
    auto key = std::make_pair(view.get(), owner);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    return atoms_.emplace(key, history_variable(agents_, owner, *view)).first->second;
  }

 private:
  const Agents& agents_;
  std::map<std::pair<std::uint32_t, std::vector<const View*>>, ViewPtr> nodes_;
  std::map<std::pair<const View*, AgentIndex>, Atom> atoms_;
};

}  // namespace

HistoryModel extend_history(const HistoryModel& previous, EpistemicModel product,
                            std::vector<std::pair<WorldId, std::vector<std::size_t>>> origin,
                            const std::vector<std::shared_ptr<const CommPattern>>& round_patterns) {
  const auto& agents = previous.agents();
  const std::size_t na = agents.size();
  const std::size_t n = product.size();
  if (origin.size() != n) throw ModelError("history extension needs one origin per world");

  HistoryModel out;
  out.round_ = previous.round() + round_patterns.size();
  out.base_ = previous.base();
  out.patterns_ = previous.patterns();
  out.patterns_.insert(out.patterns_.end(), round_patterns.begin(), round_patterns.end());
  out.base_world_.resize(n);
  out.histories_.resize(n);
  out.views_.resize(n * na);

  ViewInterner interner(agents);
  std::vector<std::vector<const Atom*>> new_atoms(n);
  for (WorldId i = 0; i < n; ++i) {
    const auto [p, graphs] = origin[i];
    if (graphs.size() != round_patterns.size()) throw ModelError("origin lacks graphs for a round");
    out.base_world_[i] = previous.base_world(p);
    auto sigma = previous.history(p);
    std::vector<ViewPtr> views(na);
    for (AgentIndex a = 0; a < na; ++a) views[a] = previous.view(p, a);
    for (std::size_t r = 0; r < graphs.size(); ++r) {
      const auto& g = round_patterns[r]->graph(graphs[r]);
      sigma.push_back(g);
      std::vector<ViewPtr> next(na);
      for (AgentIndex a = 0; a < na; ++a) {
        const auto root = g.senders(a);
        std::vector<ViewPtr> children;
        for (auto b : root.members())
          if (!views[b]->is_empty()) children.push_back(views[b]);
        next[a] = interner.node(root, std::move(children));
        new_atoms[i].push_back(&interner.variable(next[a], a));
      }
      views = std::move(next);
    }
    out.histories_[i] = std::move(sigma);
    for (AgentIndex a = 0; a < na; ++a) out.views_[i * na + a] = views[a];
  }

  std::vector<Atom> vocab = product.vocabulary();
  for (const auto& atoms : new_atoms)
    for (const auto* atom : atoms) vocab.push_back(*atom);
  vocab = normalized(std::move(vocab));
  std::vector<std::uint32_t> remap;
  for (const auto& atom : product.vocabulary())
    remap.push_back(static_cast<std::uint32_t>(
        std::lower_bound(vocab.begin(), vocab.end(), atom) - vocab.begin()));
  std::map<const Atom*, std::uint32_t> new_index;
  std::vector<Valuation> vals(n);
  for (WorldId i = 0; i < n; ++i) {
    auto& v = vals[i];
    for (auto x : product.valuation(i)) v.push_back(remap[x]);
    for (const auto* atom : new_atoms[i]) {
      auto it = new_index.find(atom);
      if (it == new_index.end())
        it = new_index
                 .emplace(atom, static_cast<std::uint32_t>(
                                    std::lower_bound(vocab.begin(), vocab.end(), *atom) -
                                    vocab.begin()))
                 .first;
      v.push_back(it->second);
    }
  }
  out.model_ = EpistemicModel(agents, std::move(vocab), product.world_names(), std::move(vals),
                              product.relations());
  return out;
}

HistoryModel history_update(const HistoryModel& model, std::shared_ptr<const CommPattern> pattern,
                            std::size_t max_worlds) {
  auto product = pattern_update(model.model(), *pattern, max_worlds);
  const std::size_t k = pattern->size();
  std::vector<std::pair<WorldId, std::vector<std::size_t>>> origin;
  origin.reserve(product.size());
  for (WorldId w = 0; w < model.size(); ++w)
    for (std::size_t j = 0; j < k; ++j) origin.emplace_back(w, std::vector<std::size_t>{j});
  return extend_history(model, std::move(product), std::move(origin), {pattern});
}

HistoryModel history_rounds(const EpistemicModel& model, std::shared_ptr<const CommPattern> pattern,
                            std::size_t rounds, std::size_t max_worlds) {
  HistoryModel h(model);
  for (std::size_t r = 0; r < rounds; ++r) h = history_update(h, pattern, max_worlds);
  return h;
}

std::vector<Atom> history_atoms(const CommPattern& pattern, std::size_t length) {
  if (length == 0) return {};
  const auto& agents = pattern.agents();
  const std::size_t na = agents.size();
  ViewInterner interner(agents);
  // Distinct view tuples reachable after each round.
  std::vector<std::vector<ViewPtr>> tuples{std::vector<ViewPtr>(na, View::empty())};
  for (std::size_t r = 0; r < length; ++r) {
    std::vector<std::vector<ViewPtr>> next;
    std::map<std::vector<const View*>, bool> seen;
    for (const auto& views : tuples)
      for (const auto& g : pattern.graphs()) {
        std::vector<ViewPtr> out(na);
        std::vector<const View*> key(na);
        for (AgentIndex a = 0; a < na; ++a) {
          std::vector<ViewPtr> children;
          for (auto b : g.senders(a).members())
            if (!views[b]->is_empty()) children.push_back(views[b]);
          out[a] = interner.node(g.senders(a), std::move(children));
          key[a] = out[a].get();
        }
        if (seen.emplace(key, true).second) next.push_back(std::move(out));
      }
    tuples = std::move(next);
  }
  std::vector<Atom> out;
  for (const auto& views : tuples)
    for (AgentIndex a = 0; a < na; ++a) out.push_back(interner.variable(views[a], a));
  return normalized(std::move(out));
}

std::vector<Atom> history_atoms_before(const CommPattern& pattern, std::size_t n) {
  std::vector<Atom> out;
  for (std::size_t m = 1; m < n; ++m) {
    auto atoms = history_atoms(pattern, m);
    out.insert(out.end(), atoms.begin(), atoms.end());
  }
  return normalized(std::move(out));
}

ActionModel round_action_model(std::shared_ptr<const CommPattern> pattern,
                               const std::vector<Atom>& base_atoms, std::size_t n,
                               std::size_t max_actions) {
  if (n == 0) throw ModelError("round numbers start at 1");
  auto atoms = base_atoms;
  auto sigma = history_atoms_before(*pattern, n);
  atoms.insert(atoms.end(), sigma.begin(), sigma.end());
  const auto name = "U" + std::to_string(n) + "(" + pattern->name() + ")";
  return induced_action_model(pattern, atoms, max_actions).renamed(name);
}

HistoryModel history_action_update(const HistoryModel& model, const ActionModel& actions,
                                   std::size_t max_worlds) {
  if (!actions.trace())
    throw ModelError("action model '" + actions.name() + "' does not record communication graphs");
  const auto& trace = *actions.trace();
  ModelChecker checker(max_worlds);
  auto product = action_product(model.model(), actions, checker, max_worlds);
  std::vector<std::pair<WorldId, std::vector<std::size_t>>> origin;
  origin.reserve(product.origin.size());
  for (auto [w, e] : product.origin) origin.emplace_back(w, trace.graphs[e]);
  return extend_history(model, std::move(product.model), std::move(origin), trace.patterns);
}

HistoryModel history_induced_update(const HistoryModel& model,
                                    std::shared_ptr<const CommPattern> pattern,
                                    const std::vector<Atom>& base_atoms, std::size_t max_worlds) {
  auto atoms = base_atoms;
  auto sigma = history_atoms_before(*pattern, model.round() + 1);
  atoms.insert(atoms.end(), sigma.begin(), sigma.end());
  auto product = induced_update(model.model(), *pattern, atoms, max_worlds);
  std::vector<std::pair<WorldId, std::vector<std::size_t>>> origin;
  origin.reserve(product.origin.size());
  for (auto [w, j] : product.origin) origin.emplace_back(w, std::vector<std::size_t>{j});
  return extend_history(model, std::move(product.model), std::move(origin), {pattern});
}

std::vector<std::size_t> sequence_points(const ActionModel& composed,
                                         const std::vector<CommGraph>& sigma) {
  if (!composed.trace())
    throw ModelError("action model '" + composed.name() + "' does not record communication graphs");
  const auto& trace = *composed.trace();
  if (trace.patterns.size() != sigma.size())
    throw ModelError("history length differs from the number of composed rounds");
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < composed.size(); ++e) {
    bool match = true;
    for (std::size_t r = 0; r < sigma.size() && match; ++r)
      match = trace.patterns[r]->graph(trace.graphs[e][r]) == sigma[r];
    if (match) out.push_back(e);
  }
  return out;
}

}  // namespace epi
