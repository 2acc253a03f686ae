#pragma once

#include <memory>
#include <string>
#include <vector>

#include "epiupdate/error.hpp"
#include "epiupdate/model.hpp"

namespace epi {

/// A reflexive relation on agents. `a R b` means b receives a's message.
/// Stored per receiver: senders(b) = R b = {a | a R b}, which always contains b.
class CommGraph {
 public:
  CommGraph() = default;
  /// The identity graph I on n agents.
  static CommGraph identity(std::size_t agent_count);
  static CommGraph universal(std::size_t agent_count);
  /// Adds the diagonal automatically.
  static CommGraph from_edges(std::size_t agent_count,
                              const std::vector<std::pair<AgentIndex, AgentIndex>>& edges);

  std::size_t agent_count() const { return senders_.size(); }
  /// R a: the agents whose messages `receiver` gets, itself included.
  AgentSet senders(AgentIndex receiver) const { return senders_.at(receiver); }
  /// R B, the union over the group.
  AgentSet senders(AgentSet receivers) const;
  bool edge(AgentIndex from, AgentIndex to) const { return senders_.at(to).contains(from); }
  /// Off-diagonal edges (from, to), sorted.
  std::vector<std::pair<AgentIndex, AgentIndex>> edges() const;

  bool is_identity() const;
  bool is_universal() const;

  friend bool operator==(const CommGraph&, const CommGraph&) = default;
  friend auto operator<=>(const CommGraph&, const CommGraph&) = default;

 private:
  std::vector<AgentSet> senders_;
};

/// `I`, `U`, or `R` followed by the edges (`Rab` is I plus a->b; multiple
/// edges are joined with `+`).
std::string graph_name(const Agents& agents, const CommGraph& graph);
/// `{a->b, b->a}`; the identity renders as `{}`.
std::string graph_literal(const Agents& agents, const CommGraph& graph);

/// A nonempty finite set of communication graphs, kept in insertion order
/// without duplicates.
class CommPattern {
 public:
  CommPattern() = default;
  /// Throws ModelError on an empty graph list or graphs over the wrong agent count.
  CommPattern(std::string name, Agents agents, std::vector<CommGraph> graphs);

  const std::string& name() const { return name_; }
  const Agents& agents() const { return agents_; }
  const std::vector<CommGraph>& graphs() const { return graphs_; }
  std::size_t size() const { return graphs_.size(); }
  const CommGraph& graph(std::size_t i) const { return graphs_.at(i); }
  std::optional<std::size_t> find(const CommGraph& graph) const;
  /// Throws ModelError if the graph is not in the pattern.
  std::size_t index_of(const CommGraph& graph) const;

  friend bool operator==(const CommPattern& x, const CommPattern& y) {
    return x.agents_ == y.agents_ && x.graphs_ == y.graphs_;
  }

 private:
  std::string name_;
  Agents agents_;
  std::vector<CommGraph> graphs_;
};

/// R a for a named agent.
AgentSet receivers_from(const CommGraph& graph, AgentIndex agent);

/// M (.) P: worlds W x P (world i, graph j at index i*|P|+j, named `w.R`),
/// (w,R) ~a (w',R') iff w ~(Ra) w' and Ra = R'a, valuations copied.
EpistemicModel pattern_update(const EpistemicModel& model, const CommPattern& pattern,
                              std::size_t max_worlds = kNoLimit);

/// All 2^(n^2-n) reflexive graphs, identity first, ordered by edge bitmask.
std::vector<CommGraph> enumerate_graphs(const Agents& agents);

}  // namespace epi
