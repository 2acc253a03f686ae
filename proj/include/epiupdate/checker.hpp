#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/error.hpp"
#include "epiupdate/formula.hpp"
#include "epiupdate/model.hpp"

namespace epi {

class HistoryModel;

/// Model checker for the full language.
///
/// Evaluation is bottom-up over sets of worlds. Products M (.) P, M (x) U and
/// history rounds are materialised once per (model, update) pair and kept in
/// an internal cache, as are subformula truth sets; the cache is guarded by a
/// mutex so a checker may be shared between threads. Cached entries are keyed
/// by address: models passed in must outlive the checker.
class ModelChecker {
 public:
  explicit ModelChecker(std::size_t max_worlds = kNoLimit);
  ~ModelChecker();
  ModelChecker(const ModelChecker&) = delete;
  ModelChecker& operator=(const ModelChecker&) = delete;

  /// Truth value at every world (one char per world).
  const std::vector<char>& evaluate(const EpistemicModel& model, const Formula& f);
  /// Throws UndefinedError if `w` is not a world of the model.
  bool satisfies(const EpistemicModel& model, WorldId w, const Formula& f);
  bool valid_on(const EpistemicModel& model, const Formula& f);

  /// History-based semantics: [P,R] advances the round with a history update.
  /// Throws ModelError on action-model modalities.
  const std::vector<char>& evaluate(const HistoryModel& model, const Formula& f);
  bool satisfies(const HistoryModel& model, WorldId w, const Formula& f);

  const EpistemicModel& pattern_product(const EpistemicModel& model,
                                        const std::shared_ptr<const CommPattern>& pattern);
  const ActionProduct& action_product(const EpistemicModel& model,
                                      const std::shared_ptr<const ActionModel>& actions);
  const HistoryModel& history_product(const HistoryModel& model,
                                      const std::shared_ptr<const CommPattern>& pattern);
  const Partition& group_partition(const EpistemicModel& model, AgentSet group);

  std::size_t max_worlds() const { return max_worlds_; }

 private:
  struct Frame {
    const EpistemicModel* model;
    const HistoryModel* history;
  };
  const std::vector<char>& eval(const Frame& frame, const Formula& f);
  std::vector<char> compute(const Frame& frame, const Formula& f);

  struct Cache;
  std::unique_ptr<Cache> cache_;
  std::size_t max_worlds_;
};

bool satisfies(const EpistemicModel& model, WorldId w, const Formula& f);
bool valid_on(const EpistemicModel& model, const Formula& f);
bool history_satisfies(const HistoryModel& model, WorldId w, const Formula& f);

}  // namespace epi
