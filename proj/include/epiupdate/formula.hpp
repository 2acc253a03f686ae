#pragma once

#include <memory>
#include <string>
#include <vector>

#include "epiupdate/atom.hpp"

namespace epi {

class CommPattern;
class ActionModel;

enum class FormulaKind {
  top,
  atom,
  negation,
  conjunction,
  distributed_knowledge,
  pattern_update,
  action_update,
};

struct FormulaNode;

/// Immutable formula handle over the six constructors
///   p_a | ~f | f & g | D_B f | [P,R] f | [U,e] f
/// plus the constant T. Agents in D_B are referred to by name.
/// Copies share structure; equality is structural.
class Formula {
 public:
  Formula();  // T

  static Formula top();
  static Formula atom(Atom atom);
  static Formula negation(Formula f);
  static Formula conjunction(Formula f, Formula g);
  /// Throws ModelError for an empty group.
  static Formula dknow(std::vector<std::string> group, Formula f);
  static Formula know(std::string agent, Formula f);
  /// Throws ModelError when `graph` is out of range.
  static Formula pattern_update(std::shared_ptr<const CommPattern> pattern, std::size_t graph,
                                Formula f);
  static Formula action_update(std::shared_ptr<const ActionModel> model, std::size_t action,
                               Formula f);

  // Sugar, expanded into the constructors above.
  static Formula bottom();
  static Formula disjunction(Formula f, Formula g);
  static Formula implication(Formula f, Formula g);
  static Formula equivalence(Formula f, Formula g);
  /// Dual of D_B: ~D_B~f.
  static Formula possible(std::vector<std::string> group, Formula f);
  /// Conjunction over every graph of the pattern: [P] f.
  static Formula all_graphs(std::shared_ptr<const CommPattern> pattern, Formula f);
  /// Conjunction over every action: [U] f.
  static Formula all_actions(std::shared_ptr<const ActionModel> model, Formula f);
  /// Conjunction of the list, T when empty.
  static Formula conjoin(const std::vector<Formula>& fs);

  FormulaKind kind() const;
  const Atom& atom() const;
  /// Child of negation, D_B, and both update modalities.
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;
  /// Sorted agent names of D_B.
  const std::vector<std::string>& group() const;
  const std::shared_ptr<const CommPattern>& pattern() const;
  std::size_t graph() const;
  const std::shared_ptr<const ActionModel>& action_model() const;
  std::size_t action() const;

  /// Identity of the shared node, for memo tables.
  const FormulaNode* id() const { return node_.get(); }
  const std::shared_ptr<const FormulaNode>& node() const { return node_; }

  bool is_dynamic_free() const;
  bool has_action_update() const;
  /// All atoms occurring, preconditions of action updates included.
  std::vector<Atom> atoms() const;

  friend bool operator==(const Formula& x, const Formula& y);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::top;
  Atom atom;
  std::vector<std::string> group;
  std::shared_ptr<const CommPattern> pattern;
  std::shared_ptr<const ActionModel> action_model;
  std::size_t point = 0;
  std::vector<Formula> children;
};

/// Printer for the formula grammar. Round-trips with parse_formula given the
/// same names in scope. Singleton D is printed as `K a`.
std::string to_string(const Formula& f);

/// md: D adds one, [P,R] adds nothing, [U,e] adds md(U).
std::size_t modal_depth(const Formula& f);
/// Largest precondition depth.
std::size_t modal_depth(const ActionModel& model);

/// delta_{Q,Q'}: conjunction of Q positive and Q'\Q negated, in atom order.
/// Throws ModelError unless Q is a subset of Q'. T when Q' is empty.
Formula description(const std::vector<Atom>& positive, const std::vector<Atom>& universe);

}  // namespace epi
