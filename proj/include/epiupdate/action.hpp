#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epiupdate/comm.hpp"
#include "epiupdate/error.hpp"
#include "epiupdate/formula.hpp"
#include "epiupdate/model.hpp"

namespace epi {

class ModelChecker;

/// For actions that stand for rounds of communication: the pattern of each
/// round and, per action, the graph executed in each round.
struct GraphTrace {
  std::vector<std::shared_ptr<const CommPattern>> patterns;
  std::vector<std::vector<std::size_t>> graphs;
};

/// An action model (E, ~, pre) with one partition of the actions per agent.
class ActionModel {
 public:
  ActionModel() = default;
  /// Throws ModelError on size mismatches, duplicate action names, or an empty action list.
  ActionModel(std::string name, Agents agents, std::vector<std::string> action_names,
              std::vector<Partition> relations, std::vector<Formula> preconditions);

  const std::string& name() const { return name_; }
  const Agents& agents() const { return agents_; }
  std::size_t size() const { return names_.size(); }
  const std::string& action_name(std::size_t e) const { return names_.at(e); }
  const std::vector<std::string>& action_names() const { return names_; }
  /// Throws ModelError for unknown names.
  std::size_t action(std::string_view name) const;
  std::optional<std::size_t> find_action(std::string_view name) const;
  const Partition& relation(AgentIndex a) const { return relations_.at(a); }
  const std::vector<Partition>& relations() const { return relations_; }
  const Formula& precondition(std::size_t e) const { return pre_.at(e); }
  const std::vector<Formula>& preconditions() const { return pre_; }

  const std::optional<GraphTrace>& trace() const { return trace_; }
  ActionModel with_trace(GraphTrace trace) const;
  ActionModel renamed(std::string name) const;

  friend bool operator==(const ActionModel&, const ActionModel&);

 private:
  std::string name_;
  Agents agents_;
  std::vector<std::string> names_;
  std::vector<Partition> relations_;
  std::vector<Formula> pre_;
  std::optional<GraphTrace> trace_;
};

struct MultiPointedActionModel {
  std::shared_ptr<const ActionModel> model;
  std::vector<std::size_t> points;

  /// Throws ModelError when a point is out of range or the list is empty.
  MultiPointedActionModel(std::shared_ptr<const ActionModel> m, std::vector<std::size_t> pts);
  /// All actions designated.
  explicit MultiPointedActionModel(std::shared_ptr<const ActionModel> m);
};

/// M (x) U together with the (world, action) pair behind each product world.
struct ActionProduct {
  EpistemicModel model;
  std::vector<std::pair<WorldId, std::size_t>> origin;
  /// origin index lookup: world*|E| + action -> product world, or -1.
  std::vector<std::int64_t> index;
};

/// Worlds (v,f) with M,v |= pre(f), ordered by v then f, named `v.f`;
/// (v,f) ~a (v',f') iff v ~a v' and f ~a f'. May be empty.
ActionProduct action_product(const EpistemicModel& model, const ActionModel& actions,
                             ModelChecker& checker, std::size_t max_worlds = kNoLimit);
EpistemicModel action_update(const EpistemicModel& model, const ActionModel& actions,
                             std::size_t max_worlds = kNoLimit);

/// U(P) over `atoms`: actions P x powerset(atoms), graph-major, subsets in
/// increasing bitmask order over the sorted atoms, named `(R,bits)`;
/// (R,Q) ~a (R',Q') iff Ra = R'a and Q restricted to Ra-owned atoms equals Q'
/// restricted to R'a-owned atoms; pre(R,Q) = delta_{Q,atoms}. Carries a GraphTrace.
/// Throws LimitError when |P|*2^|atoms| exceeds `max_actions`.
ActionModel induced_action_model(std::shared_ptr<const CommPattern> pattern,
                                 const std::vector<Atom>& atoms,
                                 std::size_t max_actions = std::size_t{1} << 20);

/// M (x) U(P) computed without materialising U(P): only the action
/// (R, L(v) & atoms) fires at v, so the product has |W|*|P| worlds with the
/// same names and relations as action_update(M, induced_action_model(P, atoms)).
/// Here `origin` holds (world, graph index) and `index` is left empty, since
/// the action count 2^|atoms| need not fit in a machine word.
ActionProduct induced_update(const EpistemicModel& model, const CommPattern& pattern,
                             const std::vector<Atom>& atoms, std::size_t max_worlds = kNoLimit);

/// Sequential composition: actions E x E' named `e;e'`,
/// (e,e') ~a (f,f') iff e ~a f and e' ~a f', pre(e,e') = pre(e) & [U,e]pre'(e').
ActionModel compose(std::shared_ptr<const ActionModel> first, const ActionModel& second);

/// One action per world of `model`, same relations, precondition the
/// description of the world's valuation over `atoms`.
ActionModel model_as_action_model(const EpistemicModel& model, const std::vector<Atom>& atoms,
                                  std::string name);

/// Single action `skip` with precondition T and total relations.
ActionModel skip_action_model(const Agents& agents);
/// Truthful public announcement: one action with the given precondition.
ActionModel public_announcement(const Agents& agents, Formula announced, std::string name);

}  // namespace epi
