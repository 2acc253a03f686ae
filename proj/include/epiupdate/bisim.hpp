#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "epiupdate/model.hpp"

namespace epi {

struct BisimResult {
  bool related = false;
  /// Pairs (x-world, y-world) in the maximal bisimulation, when requested.
  std::vector<std::pair<WorldId, WorldId>> witness;
  /// First refinement round that separated the points: a formula of that
  /// modal depth tells them apart. Only set when not related.
  std::optional<std::size_t> distinguishing_depth;
};

/// Coarsest collective auto-bisimulation, by partition refinement from
/// valuation classes. A block splits when its members reach different sets of
/// blocks along some ~B, for every nonempty group B.
Partition max_collective_bisimulation(const EpistemicModel& model);

/// Same refinement, forth/back only over single agents.
Partition max_agentwise_bisimulation(const EpistemicModel& model);

/// Decided on the disjoint union.
BisimResult bisimilar(const EpistemicModel& x, WorldId xw, const EpistemicModel& y, WorldId yw,
                      bool with_witness = false);
/// Whole models: every world on either side is related to some world on the other.
BisimResult bisimilar(const EpistemicModel& x, const EpistemicModel& y, bool with_witness = false);
/// Multi-pointed: every point on either side is related to some point on the other.
bool bisimilar(const EpistemicModel& x, const std::vector<WorldId>& xs, const EpistemicModel& y,
               const std::vector<WorldId>& ys);

/// Collective bisimulation bounded by n (n rounds of refinement from Z0).
bool n_bisimilar(const EpistemicModel& x, WorldId xw, const EpistemicModel& y, WorldId yw,
                 std::size_t n);
BisimResult n_bisimilar_result(const EpistemicModel& x, WorldId xw, const EpistemicModel& y,
                               WorldId yw, std::size_t n);

/// Agent-wise (non-collective) whole-model bisimilarity.
bool agentwise_bisimilar(const EpistemicModel& x, const EpistemicModel& y);

/// Quotient by the maximal collective bisimulation. Block names are the first
/// member's name. Throws ModelError if the quotient fails to be collectively
/// bisimilar to the input, which happens when merged blocks create ~B links
/// that no pair of original worlds had.
EpistemicModel minimize(const EpistemicModel& model);

/// Isomorphism respecting valuations (by atom) and every agent's partition.
bool isomorphic(const EpistemicModel& x, const EpistemicModel& y);
/// The mapping x-world -> y-world when one exists.
std::optional<std::vector<WorldId>> find_isomorphism(const EpistemicModel& x,
                                                     const EpistemicModel& y);

}  // namespace epi
