#include "epiupdate/comm.hpp"

#include <algorithm>

namespace epi {

CommGraph CommGraph::identity(std::size_t agent_count) {
  CommGraph g;
  for (AgentIndex a = 0; a < agent_count; ++a) g.senders_.push_back(AgentSet::single(a));
  return g;
}

CommGraph CommGraph::universal(std::size_t agent_count) {
  CommGraph g;
  g.senders_.assign(agent_count, AgentSet::all(agent_count));
  return g;
}

CommGraph CommGraph::from_edges(std::size_t agent_count,
                                const std::vector<std::pair<AgentIndex, AgentIndex>>& edges) {
  CommGraph g = identity(agent_count);
  for (auto [from, to] : edges) {
    if (from >= agent_count || to >= agent_count) throw ModelError("edge refers to unknown agent");
    g.senders_[to] = g.senders_[to].with(from);
  }
  return g;
}

AgentSet CommGraph::senders(AgentSet receivers) const {
  AgentSet out;
  for (auto b : receivers.members()) out = out | senders_.at(b);
  return out;
}

std::vector<std::pair<AgentIndex, AgentIndex>> CommGraph::edges() const {
  std::vector<std::pair<AgentIndex, AgentIndex>> out;
  for (AgentIndex from = 0; from < senders_.size(); ++from)
    for (AgentIndex to = 0; to < senders_.size(); ++to)
      if (from != to && edge(from, to)) out.emplace_back(from, to);
  return out;
}

bool CommGraph::is_identity() const { return *this == identity(senders_.size()); }
bool CommGraph::is_universal() const { return *this == universal(senders_.size()); }

std::string graph_name(const Agents& agents, const CommGraph& graph) {
  if (graph.is_identity()) return "I";
  if (graph.is_universal()) return "U";
  std::string out;
  for (auto [from, to] : graph.edges()) {
    if (!out.empty()) out += '+';
    out += "R" + agents.name(from) + agents.name(to);
  }
  return out;
}

std::string graph_literal(const Agents& agents, const CommGraph& graph) {
  std::string out = "{";
  bool first = true;
  for (auto [from, to] : graph.edges()) {
    if (!first) out += ", ";
    first = false;
    out += agents.name(from) + "->" + agents.name(to);
  }
  return out + "}";
}

CommPattern::CommPattern(std::string name, Agents agents, std::vector<CommGraph> graphs)
    : name_(std::move(name)), agents_(std::move(agents)) {
  if (graphs.empty()) throw ModelError("communication pattern '" + name_ + "' has no graphs");
  for (auto& g : graphs) {
    if (g.agent_count() != agents_.size())
      throw ModelError("graph in pattern '" + name_ + "' has the wrong number of agents");
    if (std::find(graphs_.begin(), graphs_.end(), g) == graphs_.end()) graphs_.push_back(g);
  }
}

std::optional<std::size_t> CommPattern::find(const CommGraph& graph) const {
  auto it = std::find(graphs_.begin(), graphs_.end(), graph);
  if (it == graphs_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - graphs_.begin());
}

std::size_t CommPattern::index_of(const CommGraph& graph) const {
  if (auto i = find(graph)) return *i;
  throw ModelError("graph " + graph_literal(agents_, graph) + " is not in pattern '" + name_ + "'");
}

AgentSet receivers_from(const CommGraph& graph, AgentIndex agent) { return graph.senders(agent); }

EpistemicModel pattern_update(const EpistemicModel& model, const CommPattern& pattern,
                              std::size_t max_worlds) {
  if (!(model.agents() == pattern.agents()))
    throw ModelError("pattern and model are over different agents");
  const std::size_t n = model.size(), k = pattern.size();
  check_size_limit(n * k, max_worlds, "pattern update");
  const auto& agents = model.agents();

  std::vector<std::string> names;
  std::vector<Valuation> vals;
  names.reserve(n * k);
  vals.reserve(n * k);
  std::vector<std::string> graph_names;
  for (const auto& g : pattern.graphs()) graph_names.push_back(graph_name(agents, g));
  for (WorldId w = 0; w < n; ++w) {
    for (std::size_t j = 0; j < k; ++j) {
      names.push_back(model.world_name(w) + "." + graph_names[j]);
      vals.push_back(model.valuation(w));
    }
  }

  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    // Key: (block of w under ~Ra, class of Ra). Ra identifies the class.
    std::vector<std::uint32_t> view_class(k);
    std::vector<AgentSet> seen;
    std::vector<Partition> group_rel;
    for (std::size_t j = 0; j < k; ++j) {
      auto ra = pattern.graph(j).senders(a);
      auto it = std::find(seen.begin(), seen.end(), ra);
      if (it == seen.end()) {
        view_class[j] = static_cast<std::uint32_t>(seen.size());
        seen.push_back(ra);
        group_rel.push_back(group_relation(model, ra));
      } else {
        view_class[j] = static_cast<std::uint32_t>(it - seen.begin());
      }
    }
    std::vector<std::uint32_t> labels(n * k);
    const auto classes = static_cast<std::uint32_t>(seen.size());
    for (WorldId w = 0; w < n; ++w)
      for (std::size_t j = 0; j < k; ++j) {
        auto c = view_class[j];
        labels[w * k + j] = group_rel[c].block(w) * classes + c;
      }
    relations.emplace_back(labels);
  }
  return EpistemicModel(agents, model.vocabulary(), std::move(names), std::move(vals),
                        std::move(relations));
}

std::vector<CommGraph> enumerate_graphs(const Agents& agents) {
  const std::size_t n = agents.size();
  std::vector<std::pair<AgentIndex, AgentIndex>> slots;
  for (AgentIndex from = 0; from < n; ++from)
    for (AgentIndex to = 0; to < n; ++to)
      if (from != to) slots.emplace_back(from, to);
  if (slots.size() > 20) throw LimitError("too many agents to enumerate graphs");
  std::vector<CommGraph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<AgentIndex, AgentIndex>> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1u) edges.push_back(slots[i]);
    out.push_back(CommGraph::from_edges(n, edges));
  }
  return out;
}

}  // namespace epi
