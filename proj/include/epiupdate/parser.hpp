#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/formula.hpp"

namespace epi {

/// Names visible to the formula parser.
struct ParseContext {
  Agents agents;
  /// Declared base atoms; `p_a` must name one of these.
  std::vector<Atom> atoms;
  std::map<std::string, std::shared_ptr<const CommPattern>, std::less<>> patterns;
  std::map<std::string, std::shared_ptr<const ActionModel>, std::less<>> action_models;
  /// Accept history variables such as `ab_b` or `((a,ab).ab)_a`.
  bool allow_history_atoms = true;
};

/// Grammar:
///   phi ::= IDENT "_" IDENT | "~" phi | "(" phi OP phi ")"
///         | "D" "{" agents "}" phi | "K" IDENT phi | "hK" IDENT phi
///         | "[" NAME (":" graphlit)? "]" phi | "[" NAME "." ACTION "]" phi
///   OP   ::= "&" | "|" | "->" | "<->"
/// Extensions: `true`, `false`, `hD{agents} phi`, and history variables
/// `VIEW_a` / `(VIEW)_a`. `[NAME]` alone is the conjunction over all graphs
/// (pattern) or actions (action model). ACTION runs up to the closing bracket.
/// Throws ParseError with the offending offset.
Formula parse_formula(std::string_view text, const ParseContext& context);

/// `{a->b, b->a}`; the diagonal is implied. `!a->a` excludes a pair and is an
/// error on the diagonal.
CommGraph parse_graph_literal(std::string_view text, const Agents& agents);
/// `[{a->b}, {b->a}, {a->b, b->a}]`
std::vector<CommGraph> parse_pattern_literal(std::string_view text, const Agents& agents);
/// `pattern IS = [{a->b}, {b->a}, {a->b, b->a}]`
CommPattern parse_pattern_declaration(std::string_view text, const Agents& agents);

/// `p_a` for base atoms; history atoms as printed by to_string(Atom).
Atom parse_atom(std::string_view text, const ParseContext& context);

}  // namespace epi
