#include "epiupdate/checker.hpp"

#include <tuple>

#include "epiupdate/history.hpp"

namespace epi {

struct ModelChecker::Cache {
  std::mutex mutex;

  struct PatternEntry {
    std::shared_ptr<const CommPattern> pattern;
    std::unique_ptr<EpistemicModel> product;
  };
  struct ActionEntry {
    std::shared_ptr<const ActionModel> actions;
    std::unique_ptr<ActionProduct> product;
  };
  struct HistoryEntry {
    std::shared_ptr<const CommPattern> pattern;
    std::unique_ptr<HistoryModel> product;
  };
  struct TruthEntry {
    Formula formula;  // keeps the node alive so its address stays unique
    std::unique_ptr<std::vector<char>> truth;
  };

  std::map<std::pair<const void*, const void*>, PatternEntry> patterns;
  std::map<std::pair<const void*, const void*>, ActionEntry> actions;
  std::map<std::pair<const void*, const void*>, HistoryEntry> histories;
  std::map<std::pair<const void*, std::uint32_t>, std::unique_ptr<Partition>> groups;
  std::map<std::tuple<const void*, const void*, const void*>, TruthEntry> truths;
};

ModelChecker::ModelChecker(std::size_t max_worlds)
    : cache_(std::make_unique<Cache>()), max_worlds_(max_worlds) {}

ModelChecker::~ModelChecker() = default;

const std::vector<char>& ModelChecker::evaluate(const EpistemicModel& model, const Formula& f) {
  return eval(Frame{&model, nullptr}, f);
}

bool ModelChecker::satisfies(const EpistemicModel& model, WorldId w, const Formula& f) {
  if (w >= model.size()) throw UndefinedError("world index outside the model");
  return evaluate(model, f)[w] != 0;
}

bool ModelChecker::valid_on(const EpistemicModel& model, const Formula& f) {
  const auto& truth = evaluate(model, f);
  for (char t : truth)
    if (!t) return false;
  return true;
}

const std::vector<char>& ModelChecker::evaluate(const HistoryModel& model, const Formula& f) {
  return eval(Frame{&model.model(), &model}, f);
}

bool ModelChecker::satisfies(const HistoryModel& model, WorldId w, const Formula& f) {
  if (w >= model.size()) throw UndefinedError("world index outside the model");
  return evaluate(model, f)[w] != 0;
}

const EpistemicModel& ModelChecker::pattern_product(
    const EpistemicModel& model, const std::shared_ptr<const CommPattern>& pattern) {
  const auto key = std::make_pair<const void*, const void*>(&model, pattern.get());
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->patterns.find(key);
    if (it != cache_->patterns.end()) return *it->second.product;
  }
  auto product = std::make_unique<EpistemicModel>(epi::pattern_update(model, *pattern, max_worlds_));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->patterns.try_emplace(key);
  if (inserted) it->second = Cache::PatternEntry{pattern, std::move(product)};
  return *it->second.product;
}

const ActionProduct& ModelChecker::action_product(
    const EpistemicModel& model, const std::shared_ptr<const ActionModel>& actions) {
  const auto key = std::make_pair<const void*, const void*>(&model, actions.get());
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->actions.find(key);
    if (it != cache_->actions.end()) return *it->second.product;
  }
  auto product = std::make_unique<ActionProduct>(epi::action_product(model, *actions, *this, max_worlds_));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->actions.try_emplace(key);
  if (inserted) it->second = Cache::ActionEntry{actions, std::move(product)};
  return *it->second.product;
}

const HistoryModel& ModelChecker::history_product(
    const HistoryModel& model, const std::shared_ptr<const CommPattern>& pattern) {
  const auto key = std::make_pair<const void*, const void*>(&model, pattern.get());
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->histories.find(key);
    if (it != cache_->histories.end()) return *it->second.product;
  }
  auto product = std::make_unique<HistoryModel>(history_update(model, pattern, max_worlds_));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->histories.try_emplace(key);
  if (inserted) it->second = Cache::HistoryEntry{pattern, std::move(product)};
  return *it->second.product;
}

const Partition& ModelChecker::group_partition(const EpistemicModel& model, AgentSet group) {
  const auto key = std::make_pair<const void*, std::uint32_t>(&model, group.bits());
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->groups.find(key);
    if (it != cache_->groups.end()) return *it->second;
  }
  auto partition = std::make_unique<Partition>(group_relation(model, group));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->groups.try_emplace(key);
  if (inserted) it->second = std::move(partition);
  return *it->second;
}

const std::vector<char>& ModelChecker::eval(const Frame& frame, const Formula& f) {
  const auto key = std::make_tuple<const void*, const void*, const void*>(frame.model, frame.history, f.id());
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->truths.find(key);
    if (it != cache_->truths.end()) return *it->second.truth;
  }
  auto truth = std::make_unique<std::vector<char>>(compute(frame, f));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->truths.try_emplace(key);
  if (inserted) it->second = Cache::TruthEntry{f, std::move(truth)};
  return *it->second.truth;
}

std::vector<char> ModelChecker::compute(const Frame& frame, const Formula& f) {
  const EpistemicModel& m = *frame.model;
  const std::size_t n = m.size();
  switch (f.kind()) {
    case FormulaKind::top:
      return std::vector<char>(n, 1);
    case FormulaKind::atom: {
      std::vector<char> out(n, 0);
      if (auto i = m.atom_index(f.atom()))
        for (WorldId w = 0; w < n; ++w) out[w] = m.holds(w, *i) ? 1 : 0;
      return out;
    }
    case FormulaKind::negation: {
      auto out = eval(frame, f.operand());
      for (auto& t : out) t = !t;
      return out;
    }
    case FormulaKind::conjunction: {
      auto out = eval(frame, f.left());
      const auto& r = eval(frame, f.right());
      for (std::size_t i = 0; i < n; ++i) out[i] = out[i] && r[i];
      return out;
    }
    case FormulaKind::distributed_knowledge: {
      const auto group = m.agents().set_of(f.group());
      const auto& part = group_partition(m, group);
      const auto& sub = eval(frame, f.operand());
      std::vector<char> block_true(part.block_count(), 1);
      for (WorldId w = 0; w < n; ++w)
        if (!sub[w]) block_true[part.block(w)] = 0;
      std::vector<char> out(n);
      for (WorldId w = 0; w < n; ++w) out[w] = block_true[part.block(w)];
      return out;
    }
    case FormulaKind::pattern_update: {
      const auto& pattern = f.pattern();
      const std::size_t k = pattern->size();
      const std::size_t j = f.graph();
      std::vector<char> out(n);
      if (frame.history) {
        const auto& next = history_product(*frame.history, pattern);
        const auto& sub = eval(Frame{&next.model(), &next}, f.operand());
        for (WorldId w = 0; w < n; ++w) out[w] = sub[w * k + j];
      } else {
        const auto& next = pattern_product(m, pattern);
        const auto& sub = eval(Frame{&next, nullptr}, f.operand());
        for (WorldId w = 0; w < n; ++w) out[w] = sub[w * k + j];
      }
      return out;
    }
    case FormulaKind::action_update: {
      if (frame.history)
        throw ModelError("action model modalities are not interpreted under history semantics");
      const auto& product = action_product(m, f.action_model());
      const auto& sub = eval(Frame{&product.model, nullptr}, f.operand());
      const std::size_t e = f.action();
      const std::size_t actions = f.action_model()->size();
      std::vector<char> out(n);
      for (WorldId w = 0; w < n; ++w) {
        auto idx = product.index[w * actions + e];
        out[w] = idx < 0 ? 1 : sub[static_cast<std::size_t>(idx)];
      }
      return out;
    }
  }
  return std::vector<char>(n, 0);
}

bool satisfies(const EpistemicModel& model, WorldId w, const Formula& f) {
  ModelChecker checker;
  return checker.satisfies(model, w, f);
}

bool valid_on(const EpistemicModel& model, const Formula& f) {
  ModelChecker checker;
  return checker.valid_on(model, f);
}

bool history_satisfies(const HistoryModel& model, WorldId w, const Formula& f) {
  ModelChecker checker;
  return checker.satisfies(model, w, f);
}

}  // namespace epi
