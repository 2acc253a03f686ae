#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/model.hpp"

namespace epi {

/// A pattern update, pointed at one graph or (when unset) at all of them.
struct PatternTarget {
  std::shared_ptr<const CommPattern> pattern;
  std::optional<std::size_t> point;
};

using UpdateSpec = std::variant<PatternTarget, MultiPointedActionModel>;

struct SearchOptions {
  /// 0 selects the default: every size for two agents, 4 otherwise.
  std::size_t max_pattern_size = 0;
};

struct CandidateOutcome {
  CommPattern pattern;
  bool equivalent = false;
  /// First base/point where the results differ.
  std::size_t failing_base = 0;
  WorldId failing_point = 0;
  /// The target could not be executed there while patterns always can.
  bool structural = false;
};

struct SearchReport {
  std::optional<CommPattern> found;
  std::size_t graph_count = 0;
  std::size_t max_pattern_size = 0;
  /// False when the size cap left patterns unexamined.
  bool whole_space = true;
  std::vector<CandidateOutcome> outcomes;
};

/// Tries every nonempty set of graphs over the bases' agents, smallest first
/// and then in lexicographic order of graph indices, and stops at the first
/// pattern whose result is bisimilar to the target's on every base point.
/// Equivalence is only established relative to the given bases.
SearchReport search_patterns(const std::vector<PointedModel>& bases, const UpdateSpec& target,
                             const SearchOptions& options = {});
std::optional<CommPattern> find_equivalent_pattern(const std::vector<PointedModel>& bases,
                                                   const UpdateSpec& target,
                                                   const SearchOptions& options = {});

/// Smallest n with 3^n > 2(md + 1).
std::size_t witness_round_for_depth(std::size_t modal_depth);
std::size_t witness_round(const ActionModel& model);

/// Two agents, even number of worlds >= 4, every block of size exactly two,
/// and the a- and b-pairs form one alternating cycle through all worlds.
/// Throws ModelError unless the model has exactly two agents.
bool check_circular_chain(const EpistemicModel& model);

struct FreshVariableCounterexample {
  Atom fresh;
  /// Two worlds, all other atoms true, `fresh` true in the first only;
  /// the receiver cannot tell them apart.
  EpistemicModel base;
  std::shared_ptr<const CommPattern> byzantine;
  PointedModel pattern_result;
  PointedModel action_result;
};

/// Picks the first atom of `workspace_atoms` (in atom order) that occurs in
/// no precondition of `actions`; its owner sends, the first other agent
/// receives. Throws ModelError when no such atom exists.
FreshVariableCounterexample fresh_variable_counterexample(const ActionModel& actions,
                                                          const std::vector<Atom>& workspace_atoms);

}  // namespace epi
