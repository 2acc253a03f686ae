#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/model.hpp"

namespace epi {

class View;
using ViewPtr = std::shared_ptr<const View>;

/// An agent's full-information view of a history: empty for the empty
/// history, otherwise the set Ra it heard from in the last round plus, in
/// agent order, the views of those senders on the history before it.
class View {
 public:
  static ViewPtr empty();
  /// Children must all be empty or all be nonempty, one per member of `root`.
  static ViewPtr node(AgentSet root, std::vector<ViewPtr> children);

  bool is_empty() const { return empty_; }
  AgentSet root() const { return root_; }
  const std::vector<ViewPtr>& children() const { return children_; }
  std::size_t depth() const;

  /// `a`, `ab`, `(a,ab).ab`, `ab.b`: the children (parenthesised when there
  /// are several, omitted when empty), a dot, then the root set.
  std::string serialize(const Agents& agents) const;

  friend bool operator==(const View& x, const View& y);

 private:
  View() = default;
  bool empty_ = true;
  AgentSet root_;
  std::vector<ViewPtr> children_;
};

/// view_a(sigma).
ViewPtr view_of(AgentIndex agent, const std::vector<CommGraph>& sigma);
/// Inverse of serialize. Throws ParseError.
ViewPtr parse_view(std::string_view text, const Agents& agents);
/// The history variable (view)_a.
Atom history_variable(const Agents& agents, AgentIndex agent, const View& view);

/// M (.)^n P: a model whose worlds are pairs (w, sigma) with |sigma| = round.
/// Round 0 is the base model, in which no history variable is true.
class HistoryModel {
 public:
  /// Throws ModelError if some history atom is true in the base model.
  explicit HistoryModel(EpistemicModel base);

  const EpistemicModel& model() const { return model_; }
  std::size_t round() const { return round_; }
  std::size_t size() const { return model_.size(); }
  const Agents& agents() const { return model_.agents(); }
  const std::shared_ptr<const EpistemicModel>& base() const { return base_; }

  WorldId base_world(WorldId w) const { return base_world_.at(w); }
  const std::vector<CommGraph>& history(WorldId w) const { return histories_.at(w); }
  const ViewPtr& view(WorldId w, AgentIndex a) const { return views_.at(w * agents().size() + a); }
  /// Pattern context of every round so far.
  const std::vector<std::shared_ptr<const CommPattern>>& patterns() const { return patterns_; }
  std::optional<WorldId> find(WorldId base_world, const std::vector<CommGraph>& sigma) const;

 private:
  HistoryModel() = default;
  friend HistoryModel extend_history(const HistoryModel&, EpistemicModel,
                                     std::vector<std::pair<WorldId, std::vector<std::size_t>>>,
                                     const std::vector<std::shared_ptr<const CommPattern>>&);

  EpistemicModel model_;
  std::size_t round_ = 0;
  std::shared_ptr<const EpistemicModel> base_;
  std::vector<WorldId> base_world_;
  std::vector<std::vector<CommGraph>> histories_;
  std::vector<ViewPtr> views_;
  std::vector<std::shared_ptr<const CommPattern>> patterns_;
};

/// Builds the next-round history model from a product over `previous`:
/// product world i extends previous world origin[i].first by the graphs
/// origin[i].second (indices into `round_patterns`, one per new round), and
/// gains the history variables of every new round.
HistoryModel extend_history(const HistoryModel& previous, EpistemicModel product,
                            std::vector<std::pair<WorldId, std::vector<std::size_t>>> origin,
                            const std::vector<std::shared_ptr<const CommPattern>>& round_patterns);

/// One round of H (.) P: relations as for pattern_update, and
/// L'(w, sigma.R) = L(w, sigma) + {(view_b(sigma.R))_b | b in A}.
HistoryModel history_update(const HistoryModel& model, std::shared_ptr<const CommPattern> pattern,
                            std::size_t max_worlds = kNoLimit);
/// M (.)^n P from round 0.
HistoryModel history_rounds(const EpistemicModel& model, std::shared_ptr<const CommPattern> pattern,
                            std::size_t rounds, std::size_t max_worlds = kNoLimit);

/// Sigma^m: the history variables of all histories of length m over the pattern.
std::vector<Atom> history_atoms(const CommPattern& pattern, std::size_t length);
/// Sigma^{<n}: lengths 1..n-1 (Sigma^0 is empty).
std::vector<Atom> history_atoms_before(const CommPattern& pattern, std::size_t n);

/// U^n(P): the induced action model over P u Sigma^{<n}. Feasible only for
/// small patterns; see history_induced_update for the lazy route.
ActionModel round_action_model(std::shared_ptr<const CommPattern> pattern,
                               const std::vector<Atom>& base_atoms, std::size_t n,
                               std::size_t max_actions = std::size_t{1} << 20);

/// H (x) U for an action model whose actions carry a GraphTrace: the action
/// product, with every new round's history variables added to each world.
HistoryModel history_action_update(const HistoryModel& model, const ActionModel& actions,
                                   std::size_t max_worlds = kNoLimit);

/// H (x) U^{round+1}(P) over base atoms plus Sigma^{<round+1}, computed
/// lazily and labelled with the new round's history variables.
HistoryModel history_induced_update(const HistoryModel& model,
                                    std::shared_ptr<const CommPattern> pattern,
                                    const std::vector<Atom>& base_atoms,
                                    std::size_t max_worlds = kNoLimit);

/// Designated actions of a composed round model for the history sigma: every
/// action whose traced graphs are exactly sigma.
std::vector<std::size_t> sequence_points(const ActionModel& composed,
                                         const std::vector<CommGraph>& sigma);

}  // namespace epi
