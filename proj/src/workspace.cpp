#include "epiupdate/workspace.hpp"

#include <sstream>

#include "epiupdate/fixtures.hpp"
#include "epiupdate/io.hpp"

namespace epi {

using nlohmann::json;

namespace {

const json& object_at(const json& doc, const char* key) {
  static const json empty = json::object();
  const auto it = doc.find(key);
  return it == doc.end() ? empty : *it;
}

}  // namespace

Workspace::Workspace(Agents agents, std::vector<Atom> atoms)
    : agents_(std::move(agents)), atoms_(normalized(std::move(atoms))) {
  for (const auto& atom : atoms_)
    if (!agents_.contains(atom.owner))
      throw ModelError("atom " + to_string(atom) + " is owned by an unknown agent");
  context_.agents = agents_;
  context_.atoms = atoms_;
}

Workspace Workspace::builtin() {
  namespace fx = fixtures;
  Workspace ws(fx::two_agents(), {fx::p_a(), fx::p_b(), fx::q_a()});
  ws.add_model("Sq", fx::square());
  ws.add_model("M", fx::byzantine_initial());
  ws.add_model("Mpp", fx::fresh_variable_model());
  ws.add_model("PQ", fx::pq_square());
  ws.add_pattern("I", fx::identity_pattern()->graphs());
  ws.add_pattern("U", fx::universal_pattern()->graphs());
  ws.add_pattern("Byz", fx::byzantine()->graphs());
  ws.add_pattern("IS", fx::immediate_snapshot()->graphs());
  ws.add_action_model("skip", *fx::skip());
  ws.add_action_model("ann", *fx::announce_pa_or_pb());
  ws.add_action_model("reveal", *fx::reveal_pa());
  return ws;
}

Workspace Workspace::from_json(const json& doc) {
  try {
    Workspace ws;
    if (doc.value("include_builtins", false)) {
      ws = builtin();
      if (doc.contains("agents") &&
          Agents(doc.at("agents").get<std::vector<std::string>>()) != ws.agents())
        throw ModelError("a workspace that includes the builtins must use agents a and b");
      std::vector<Atom> atoms = ws.atoms_;
      for (const auto& a : doc.value("atoms", json::array()))
        atoms.push_back(Atom::base(a.at("base").get<std::string>(), a.at("owner").get<std::string>()));
      ws.atoms_ = normalized(std::move(atoms));
      ws.context_.atoms = ws.atoms_;
    } else {
      std::vector<Atom> atoms;
      for (const auto& a : doc.value("atoms", json::array()))
        atoms.push_back(Atom::base(a.at("base").get<std::string>(), a.at("owner").get<std::string>()));
      if (!doc.contains("agents")) throw ParseError("workspace without 'agents'");
      ws = Workspace(Agents(doc.at("agents").get<std::vector<std::string>>()), std::move(atoms));
    }

    for (const auto& [name, text] : object_at(doc, "patterns").items())
      ws.add_pattern(name, parse_pattern_literal(text.get<std::string>(), ws.agents_));
    for (const auto& decl : doc.value("declarations", json::array())) {
      auto p = parse_pattern_declaration(decl.get<std::string>(), ws.agents_);
      ws.add_pattern(p.name(), p.graphs());
    }
    for (const auto& [name, m] : object_at(doc, "models").items()) {
      json full = m;
      if (!full.contains("agents")) full["agents"] = ws.agents_.names();
      if (!full.contains("atoms")) {
        json atoms = json::array();
        for (const auto& atom : ws.atoms_) atoms.push_back({{"base", atom.name}, {"owner", atom.owner}});
        full["atoms"] = atoms;
      }
      auto model = model_from_json(full);
      if (!(model.agents() == ws.agents_))
        throw ModelError("model '" + name + "' is over different agents than the workspace");
      ws.add_model(name, std::move(model));
    }
    for (const auto& [name, a] : object_at(doc, "action_models").items())
      ws.add_action_model(name, action_model_from_json(name, a, ws.context_));
    for (const auto& [name, text] : object_at(doc, "formulas").items())
      ws.add_formula(name, parse_formula(text.get<std::string>(), ws.context_));
    return ws;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed workspace: ") + e.what());
  }
}

void Workspace::claim(const std::string& name) {
  if (models_.count(name) || formulas_.count(name) || context_.patterns.count(name) ||
      context_.action_models.count(name))
    throw ModelError("name '" + name + "' is already used in the workspace");
}

void Workspace::add_model(const std::string& name, EpistemicModel model) {
  claim(name);
  models_.emplace(name, std::move(model));
}

void Workspace::add_pattern(const std::string& name, std::vector<CommGraph> graphs) {
  claim(name);
  context_.patterns.emplace(name, std::make_shared<const CommPattern>(name, agents_, std::move(graphs)));
}

void Workspace::add_action_model(const std::string& name, ActionModel model) {
  claim(name);
  context_.action_models.emplace(name, std::make_shared<const ActionModel>(model.renamed(name)));
}

void Workspace::add_formula(const std::string& name, Formula formula) {
  claim(name);
  formulas_.emplace(name, std::move(formula));
}

const EpistemicModel& Workspace::model(std::string_view name) const {
  auto it = models_.find(name);
  if (it == models_.end()) throw ModelError("unknown model '" + std::string(name) + "'");
  return it->second;
}

std::shared_ptr<const CommPattern> Workspace::pattern(std::string_view name) const {
  auto it = context_.patterns.find(name);
  if (it == context_.patterns.end()) throw ModelError("unknown pattern '" + std::string(name) + "'");
  return it->second;
}

std::shared_ptr<const ActionModel> Workspace::action_model(std::string_view name) const {
  auto it = context_.action_models.find(name);
  if (it == context_.action_models.end())
    throw ModelError("unknown action model '" + std::string(name) + "'");
  return it->second;
}

const Formula& Workspace::formula(std::string_view name) const {
  auto it = formulas_.find(name);
  if (it == formulas_.end()) throw ModelError("unknown formula '" + std::string(name) + "'");
  return it->second;
}

bool Workspace::has_formula(std::string_view name) const { return formulas_.count(name) > 0; }

Formula Workspace::resolve_formula(std::string_view text) const {
  if (has_formula(text)) return formula(text);
  return parse_formula(text, context_);
}

std::pair<std::string, std::vector<UpdateStep>> parse_model_expression(std::string_view text) {
  std::string spaced;
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, 3) == "⊙") {
      spaced += " odot ";
      i += 3;
    } else if (text.substr(i, 3) == "⊗") {
      spaced += " otimes ";
      i += 3;
    } else {
      spaced += text[i++];
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw ParseError("empty model expression");
  if (tokens.size() % 2 == 0) throw ParseError("model expression must alternate names and operators");
  std::vector<UpdateStep> steps;
  for (std::size_t i = 1; i < tokens.size(); i += 2) {
    const auto& op = tokens[i];
    const auto& step = tokens[i + 1];
    if (op == "odot") {
      steps.push_back({UpdateStep::Kind::pattern, step});
    } else if (op == "otimes") {
      if (step.size() > 3 && step.rfind("U(", 0) == 0 && step.back() == ')')
        steps.push_back({UpdateStep::Kind::induced, step.substr(2, step.size() - 3)});
      else
        steps.push_back({UpdateStep::Kind::action, step});
    } else {
      throw ParseError("expected 'odot' or 'otimes' but found '" + op + "'");
    }
  }
  return {tokens.front(), steps};
}

namespace {

std::vector<Atom> base_atoms(const EpistemicModel& model) {
  std::vector<Atom> out;
  for (const auto& atom : model.vocabulary())
    if (!atom.is_history()) out.push_back(atom);
  return out;
}

}  // namespace

EvaluatedModel run_pipeline(const Workspace& ws, const std::string& start,
                            const std::vector<UpdateStep>& steps, bool history,
                            std::size_t max_worlds) {
  const auto& initial = ws.model(start);
  if (history) {
    auto h = std::make_shared<HistoryModel>(initial);
    for (const auto& step : steps) {
      switch (step.kind) {
        case UpdateStep::Kind::pattern:
          *h = history_update(*h, ws.pattern(step.name), max_worlds);
          break;
        case UpdateStep::Kind::induced:
          *h = history_induced_update(*h, ws.pattern(step.name), base_atoms(h->model()), max_worlds);
          break;
        case UpdateStep::Kind::action:
          *h = history_action_update(*h, *ws.action_model(step.name), max_worlds);
          break;
      }
      if (h->model().empty())
        throw UndefinedError("no action of '" + step.name + "' is executable; the model is empty");
    }
    return EvaluatedModel{h->model(), h};
  }
  EpistemicModel m = initial;
  for (const auto& step : steps) {
    switch (step.kind) {
      case UpdateStep::Kind::pattern:
        m = pattern_update(m, *ws.pattern(step.name), max_worlds);
        break;
      case UpdateStep::Kind::induced:
        m = induced_update(m, *ws.pattern(step.name), base_atoms(m), max_worlds).model;
        break;
      case UpdateStep::Kind::action:
        m = action_update(m, *ws.action_model(step.name), max_worlds);
        if (m.empty())
          throw UndefinedError("no action of '" + step.name + "' is executable; the model is empty");
        break;
    }
  }
  return EvaluatedModel{std::move(m), nullptr};
}

}  // namespace epi
