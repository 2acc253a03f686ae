#include "epiupdate/formula.hpp"

#include <algorithm>
#include <functional>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/error.hpp"

namespace epi {

namespace {

std::shared_ptr<FormulaNode> make(FormulaKind kind) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  return n;
}

const std::shared_ptr<const FormulaNode>& top_node() {
  static const std::shared_ptr<const FormulaNode> node = make(FormulaKind::top);
  return node;
}

}  // namespace

Formula::Formula() : node_(top_node()) {}

Formula Formula::top() { return Formula(); }

Formula Formula::atom(Atom atom) {
  auto n = make(FormulaKind::atom);
  n->atom = std::move(atom);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = make(FormulaKind::negation);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula f, Formula g) {
  auto n = make(FormulaKind::conjunction);
  n->children = {std::move(f), std::move(g)};
  return Formula(std::move(n));
}

Formula Formula::dknow(std::vector<std::string> group, Formula f) {
  if (group.empty()) throw ModelError("distributed knowledge needs a nonempty group");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  auto n = make(FormulaKind::distributed_knowledge);
  n->group = std::move(group);
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::know(std::string agent, Formula f) { return dknow({std::move(agent)}, std::move(f)); }

Formula Formula::pattern_update(std::shared_ptr<const CommPattern> pattern, std::size_t graph,
                                Formula f) {
  if (!pattern) throw ModelError("missing pattern");
  if (graph >= pattern->size())
    throw ModelError("graph index out of range for pattern '" + pattern->name() + "'");
  auto n = make(FormulaKind::pattern_update);
  n->pattern = std::move(pattern);
  n->point = graph;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::action_update(std::shared_ptr<const ActionModel> model, std::size_t action,
                               Formula f) {
  if (!model) throw ModelError("missing action model");
  if (action >= model->size())
    throw ModelError("action index out of range for action model '" + model->name() + "'");
  auto n = make(FormulaKind::action_update);
  n->action_model = std::move(model);
  n->point = action;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::bottom() { return negation(top()); }

Formula Formula::disjunction(Formula f, Formula g) {
  return negation(conjunction(negation(std::move(f)), negation(std::move(g))));
}

Formula Formula::implication(Formula f, Formula g) {
  return negation(conjunction(std::move(f), negation(std::move(g))));
}

Formula Formula::equivalence(Formula f, Formula g) {
  return conjunction(implication(f, g), implication(g, f));
}

Formula Formula::possible(std::vector<std::string> group, Formula f) {
  return negation(dknow(std::move(group), negation(std::move(f))));
}

Formula Formula::all_graphs(std::shared_ptr<const CommPattern> pattern, Formula f) {
  std::vector<Formula> parts;
  for (std::size_t j = 0; j < pattern->size(); ++j) parts.push_back(pattern_update(pattern, j, f));
  return conjoin(parts);
}

Formula Formula::all_actions(std::shared_ptr<const ActionModel> model, Formula f) {
  std::vector<Formula> parts;
  for (std::size_t e = 0; e < model->size(); ++e) parts.push_back(action_update(model, e, f));
  return conjoin(parts);
}

Formula Formula::conjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = conjunction(out, fs[i]);
  return out;
}

FormulaKind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom() const { return node_->atom; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const std::vector<std::string>& Formula::group() const { return node_->group; }
const std::shared_ptr<const CommPattern>& Formula::pattern() const { return node_->pattern; }
std::size_t Formula::graph() const { return node_->point; }
const std::shared_ptr<const ActionModel>& Formula::action_model() const {
  return node_->action_model;
}
std::size_t Formula::action() const { return node_->point; }

bool Formula::is_dynamic_free() const {
  switch (kind()) {
    case FormulaKind::top:
    case FormulaKind::atom:
      return true;
    case FormulaKind::pattern_update:
    case FormulaKind::action_update:
      return false;
    default:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [](const Formula& c) { return c.is_dynamic_free(); });
  }
}

bool Formula::has_action_update() const {
  if (kind() == FormulaKind::action_update) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Formula& c) { return c.has_action_update(); });
}

std::vector<Atom> Formula::atoms() const {
  std::vector<Atom> out;
  std::vector<const ActionModel*> visited;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f.kind() == FormulaKind::atom) out.push_back(f.atom());
    if (f.kind() == FormulaKind::action_update) {
      const auto* m = f.action_model().get();
      if (std::find(visited.begin(), visited.end(), m) == visited.end()) {
        visited.push_back(m);
        for (const auto& pre : m->preconditions()) walk(pre);
      }
    }
    for (const auto& c : f.node()->children) walk(c);
  };
  walk(*this);
  return normalized(std::move(out));
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind || a.point != b.point || a.children.size() != b.children.size())
    return false;
  switch (a.kind) {
    case FormulaKind::atom:
      if (!(a.atom == b.atom)) return false;
      break;
    case FormulaKind::distributed_knowledge:
      if (a.group != b.group) return false;
      break;
    case FormulaKind::pattern_update:
      if (a.pattern != b.pattern && !(*a.pattern == *b.pattern)) return false;
      break;
    case FormulaKind::action_update:
      if (a.action_model != b.action_model && !(*a.action_model == *b.action_model)) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(a.children[i] == b.children[i])) return false;
  return true;
}

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::top:
      return "true";
    case FormulaKind::atom:
      return to_string(f.atom());
    case FormulaKind::negation:
      if (f.operand().kind() == FormulaKind::top) return "false";
      return "~" + to_string(f.operand());
    case FormulaKind::conjunction:
      return "(" + to_string(f.left()) + " & " + to_string(f.right()) + ")";
    case FormulaKind::distributed_knowledge: {
      const auto& g = f.group();
      if (g.size() == 1) return "K " + g.front() + " " + to_string(f.operand());
      std::string out = "D{";
      for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + g[i];
      return out + "} " + to_string(f.operand());
    }
    case FormulaKind::pattern_update: {
      const auto& p = *f.pattern();
      return "[" + p.name() + ":" + graph_literal(p.agents(), p.graph(f.graph())) + "] " +
             to_string(f.operand());
    }
    case FormulaKind::action_update: {
      const auto& u = *f.action_model();
      return "[" + u.name() + "." + u.action_name(f.action()) + "] " + to_string(f.operand());
    }
  }
  return {};
}

std::size_t modal_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::top:
    case FormulaKind::atom:
      return 0;
    case FormulaKind::negation:
      return modal_depth(f.operand());
    case FormulaKind::conjunction:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case FormulaKind::distributed_knowledge:
      return 1 + modal_depth(f.operand());
    case FormulaKind::pattern_update:
      return modal_depth(f.operand());
    case FormulaKind::action_update:
      return modal_depth(*f.action_model()) + modal_depth(f.operand());
  }
  return 0;
}

std::size_t modal_depth(const ActionModel& model) {
  std::size_t out = 0;
  for (const auto& pre : model.preconditions()) out = std::max(out, modal_depth(pre));
  return out;
}

Formula description(const std::vector<Atom>& positive, const std::vector<Atom>& universe) {
  auto pos = normalized(positive);
  auto all = normalized(universe);
  if (!std::includes(all.begin(), all.end(), pos.begin(), pos.end()))
    throw ModelError("description: positive atoms must be a subset of the universe");
  std::vector<Formula> parts;
  for (const auto& atom : all) {
    auto lit = Formula::atom(atom);
    parts.push_back(std::binary_search(pos.begin(), pos.end(), atom) ? lit
                                                                     : Formula::negation(lit));
  }
  return Formula::conjoin(parts);
}

}  // namespace epi
