#pragma once

#include <string>

#include <json.hpp>

#include "epiupdate/action.hpp"
#include "epiupdate/model.hpp"
#include "epiupdate/parser.hpp"

namespace epi {

/// {agents, atoms:[{base,owner}], history_atoms:[{view,owner}],
///  worlds:[{id, val:[atom...]}], relations:{agent:[[world,...],...]}}
/// Agents missing from `relations` get the interpreted-system relation.
nlohmann::json model_to_json(const EpistemicModel& model);
EpistemicModel model_from_json(const nlohmann::json& doc);

/// Mirrors the model format with `actions:[{id, pre}]` and no valuations.
/// Agents missing from `relations` tell all actions apart.
nlohmann::json action_model_to_json(const ActionModel& model);
ActionModel action_model_from_json(const std::string& name, const nlohmann::json& doc,
                                   const ParseContext& context);

/// Graphviz: one undirected edge per agent per pair of distinct worlds in a
/// block, labelled by the agent; nodes and edges sorted.
std::string to_dot(const EpistemicModel& model, const std::string& graph_name = "M");
/// Human-readable listing.
std::string to_text(const EpistemicModel& model);

}  // namespace epi
