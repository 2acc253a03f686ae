#include "epiupdate/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "epiupdate/history.hpp"

namespace epi {

using nlohmann::json;

namespace {

const json& object_at(const json& doc, const char* key) {
  static const json empty = json::object();
  const auto it = doc.find(key);
  return it == doc.end() ? empty : *it;
}

json blocks_json(const Partition& p, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& block : p.blocks()) {
    json b = json::array();
    for (auto w : block) b.push_back(names[w]);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<std::vector<std::string>> blocks_from_json(const json& doc) {
  std::vector<std::vector<std::string>> out;
  for (const auto& block : doc) out.push_back(block.get<std::vector<std::string>>());
  return out;
}

Agents agents_from_json(const json& doc) {
  if (!doc.contains("agents")) throw ParseError("missing 'agents'");
  return Agents(doc.at("agents").get<std::vector<std::string>>());
}

}  // namespace

json model_to_json(const EpistemicModel& model) {
  json doc;
  doc["agents"] = model.agents().names();
  json atoms = json::array(), history = json::array();
  for (const auto& atom : model.vocabulary()) {
    if (atom.is_history()) history.push_back({{"view", atom.name}, {"owner", atom.owner}});
    else atoms.push_back({{"base", atom.name}, {"owner", atom.owner}});
  }
  doc["atoms"] = atoms;
  if (!history.empty()) doc["history_atoms"] = history;
  json worlds = json::array();
  for (WorldId w = 0; w < model.size(); ++w) {
    json val = json::array();
    for (const auto& atom : model.true_atoms(w)) val.push_back(to_string(atom));
    worlds.push_back({{"id", model.world_name(w)}, {"val", val}});
  }
  doc["worlds"] = worlds;
  json relations = json::object();
  for (AgentIndex a = 0; a < model.agents().size(); ++a)
    relations[model.agents().name(a)] = blocks_json(model.relation(a), model.world_names());
  doc["relations"] = relations;
  return doc;
}

EpistemicModel model_from_json(const json& doc) {
  try {
    auto agents = agents_from_json(doc);
    std::vector<Atom> vocab;
    for (const auto& a : doc.value("atoms", json::array()))
      vocab.push_back(Atom::base(a.at("base").get<std::string>(), a.at("owner").get<std::string>()));
    for (const auto& a : doc.value("history_atoms", json::array()))
      vocab.push_back(Atom::history(a.at("view").get<std::string>(), a.at("owner").get<std::string>()));
    ParseContext ctx;
    ctx.agents = agents;
    ctx.atoms = normalized(vocab);
    ModelBuilder builder(agents, vocab);
    for (const auto& w : doc.at("worlds")) {
      std::vector<Atom> val;
      for (const auto& s : w.value("val", json::array())) val.push_back(parse_atom(s.get<std::string>(), ctx));
      builder.world(w.at("id").get<std::string>(), val);
    }
    for (const auto& [agent, blocks] : object_at(doc, "relations").items())
      builder.blocks(agent, blocks_from_json(blocks));
    return builder.build();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  }
}

json action_model_to_json(const ActionModel& model) {
  json doc;
  doc["agents"] = model.agents().names();
  json actions = json::array();
  for (std::size_t e = 0; e < model.size(); ++e)
    actions.push_back({{"id", model.action_name(e)}, {"pre", to_string(model.precondition(e))}});
  doc["actions"] = actions;
  json relations = json::object();
  for (AgentIndex a = 0; a < model.agents().size(); ++a)
    relations[model.agents().name(a)] = blocks_json(model.relation(a), model.action_names());
  doc["relations"] = relations;
  return doc;
}

ActionModel action_model_from_json(const std::string& name, const json& doc,
                                   const ParseContext& context) {
  try {
    const auto& agents = context.agents;
    std::vector<std::string> ids;
    std::vector<Formula> pre;
    for (const auto& act : doc.at("actions")) {
      ids.push_back(act.at("id").get<std::string>());
      pre.push_back(parse_formula(act.value("pre", std::string("true")), context));
    }
    std::vector<Partition> relations(agents.size(), Partition::identity(ids.size()));
    const auto rel = doc.value("relations", json::object());
    for (const auto& [agent, blocks] : rel.items()) {
      std::vector<std::vector<WorldId>> idx;
      for (const auto& block : blocks_from_json(blocks)) {
        std::vector<WorldId> members;
        for (const auto& id : block) {
          auto it = std::find(ids.begin(), ids.end(), id);
          if (it == ids.end()) throw ParseError("unknown action '" + id + "' in relation of " + name);
          members.push_back(static_cast<WorldId>(it - ids.begin()));
        }
        idx.push_back(std::move(members));
      }
      relations.at(agents.index(agent)) = Partition::from_blocks(ids.size(), idx);
    }
    return ActionModel(name, agents, std::move(ids), std::move(relations), std::move(pre));
  } catch (const json::exception& e) {
    throw ParseError("malformed action model '" + name + "': " + e.what());
  }
}

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const EpistemicModel& model, const std::string& graph_name) {
  std::vector<WorldId> order(model.size());
  for (WorldId w = 0; w < model.size(); ++w) order[w] = w;
  std::sort(order.begin(), order.end(),
            [&](WorldId x, WorldId y) { return model.world_name(x) < model.world_name(y); });
  std::ostringstream out;
  out << "graph " << dot_id(graph_name) << " {\n";
  for (auto w : order) {
    std::string label = model.world_name(w);
    std::string atoms;
    for (const auto& atom : model.true_atoms(w)) atoms += (atoms.empty() ? "" : " ") + to_string(atom);
    if (!atoms.empty()) label += "\\n" + atoms;
    out << "  " << dot_id(model.world_name(w)) << " [label=" << dot_id(label) << "];\n";
  }
  std::set<std::tuple<std::string, std::string, std::string>> edges;
  for (AgentIndex a = 0; a < model.agents().size(); ++a)
    for (const auto& block : model.relation(a).blocks())
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j) {
          auto x = model.world_name(block[i]), y = model.world_name(block[j]);
          if (y < x) std::swap(x, y);
          edges.emplace(x, y, model.agents().name(a));
        }
  for (const auto& [x, y, agent] : edges)
    out << "  " << dot_id(x) << " -- " << dot_id(y) << " [label=" << dot_id(agent) << "];\n";
  out << "}\n";
  return out.str();
}

std::string to_text(const EpistemicModel& model) {
  std::ostringstream out;
  out << model.size() << " worlds, agents";
  for (const auto& a : model.agents().names()) out << ' ' << a;
  out << '\n';
  for (WorldId w = 0; w < model.size(); ++w) {
    out << "  " << model.world_name(w) << ':';
    for (const auto& atom : model.true_atoms(w)) out << ' ' << to_string(atom);
    out << '\n';
  }
  for (AgentIndex a = 0; a < model.agents().size(); ++a) {
    out << "  ~" << model.agents().name(a) << ':';
    for (const auto& block : model.relation(a).blocks()) {
      out << " {";
      for (std::size_t i = 0; i < block.size(); ++i) out << (i ? "," : "") << model.world_name(block[i]);
      out << '}';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace epi
