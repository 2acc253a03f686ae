#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/formula.hpp"
#include "epiupdate/history.hpp"
#include "epiupdate/model.hpp"
#include "epiupdate/parser.hpp"

namespace epi {

/// Named models, patterns, action models and formulas over one agent set.
/// Names are unique across all kinds.
class Workspace {
 public:
  Workspace() = default;
  Workspace(Agents agents, std::vector<Atom> atoms);

  /// Agents a, b; atoms p_a, p_b, q_a; models Sq, M, Mpp, PQ; patterns
  /// I, U, Byz, IS; action models skip, ann, reveal.
  static Workspace builtin();
  /// Throws ParseError / ModelError on malformed documents or name clashes.
  static Workspace from_json(const nlohmann::json& doc);

  const Agents& agents() const { return agents_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  void add_model(const std::string& name, EpistemicModel model);
  void add_pattern(const std::string& name, std::vector<CommGraph> graphs);
  void add_action_model(const std::string& name, ActionModel model);
  void add_formula(const std::string& name, Formula formula);

  const EpistemicModel& model(std::string_view name) const;
  std::shared_ptr<const CommPattern> pattern(std::string_view name) const;
  std::shared_ptr<const ActionModel> action_model(std::string_view name) const;
  const Formula& formula(std::string_view name) const;
  bool has_formula(std::string_view name) const;

  const std::map<std::string, EpistemicModel, std::less<>>& models() const { return models_; }
  const ParseContext& context() const { return context_; }

  /// A named formula, or the text parsed as a formula.
  Formula resolve_formula(std::string_view text) const;

 private:
  void claim(const std::string& name);

  Agents agents_;
  std::vector<Atom> atoms_;
  std::map<std::string, EpistemicModel, std::less<>> models_;
  std::map<std::string, Formula, std::less<>> formulas_;
  ParseContext context_;
};

/// One step of an update pipeline.
struct UpdateStep {
  enum class Kind { pattern, action, induced };
  Kind kind = Kind::pattern;
  std::string name;
};

/// Result of evaluating a model expression; `history` is set under --history.
struct EvaluatedModel {
  EpistemicModel model;
  std::shared_ptr<HistoryModel> history;
};

/// Parses `NAME (op STEP)*` with op one of `odot`, `otimes` (also the
/// Unicode signs) and STEP a pattern name, action model name, or `U(NAME)`
/// for the induced action model over the current model's base atoms.
std::pair<std::string, std::vector<UpdateStep>> parse_model_expression(std::string_view text);

/// Applies the steps in order; with `history` every pattern step is a
/// history round. Throws UndefinedError when an action update empties the model.
EvaluatedModel run_pipeline(const Workspace& ws, const std::string& start,
                            const std::vector<UpdateStep>& steps, bool history,
                            std::size_t max_worlds);

}  // namespace epi
