// Command-line front end for the epiupdate library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "epiupdate/bisim.hpp"
#include "epiupdate/checker.hpp"
#include "epiupdate/history.hpp"
#include "epiupdate/io.hpp"
#include "epiupdate/iunf.hpp"
#include "epiupdate/parser.hpp"
#include "epiupdate/search.hpp"
#include "epiupdate/workspace.hpp"

namespace {

using namespace epi;

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

std::size_t max_worlds_from_env() {
  const char* env = std::getenv("EPIUPDATE_MAX_WORLDS");
  if (!env || !*env) return 100000;
  try {
    std::size_t pos = 0;
    auto v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ModelError("EPIUPDATE_MAX_WORLDS must be a nonnegative integer");
  }
}

Workspace load_workspace(const std::string& path) {
  if (path.empty()) return Workspace::builtin();
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open workspace file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("workspace file '" + path + "' is not valid JSON: " + e.what());
  }
  return Workspace::from_json(doc);
}

EvaluatedModel evaluate_expression(const Workspace& ws, const std::string& text, bool history,
                                   std::size_t max_worlds) {
  auto [start, steps] = parse_model_expression(text);
  return run_pipeline(ws, start, steps, history, max_worlds);
}

void emit_model(const EpistemicModel& m, const std::string& format, const std::string& name) {
  if (format == "json") std::cout << model_to_json(m).dump(2) << '\n';
  else if (format == "dot") std::cout << to_dot(m, name);
  else std::cout << to_text(m);
}

WorldId world_of(const EpistemicModel& m, const std::string& name) {
  if (auto w = m.find_world(name)) return *w;
  throw ModelError("unknown world '" + name + "'");
}

struct Options {
  std::string workspace;
  std::string format = "text";
  bool history = false;

  // update
  std::string model;
  std::vector<std::string> with, with_action, with_induced;
  std::size_t rounds = 1;

  // check
  std::vector<std::string> check_args;
  bool valid = false;

  // bisim
  std::string left, right;
  std::vector<std::string> points;
  std::optional<std::size_t> bound;
  bool iso = false;
  bool witness = false;

  // induce
  std::string pattern;
  std::size_t round = 1;
  std::vector<std::string> atoms;

  // iunf
  std::string formula;

  // search
  std::vector<std::string> bases;
  std::string target;
  std::size_t max_pattern_size = 0;
};

int cmd_update(const Workspace& ws, const Options& o, CLI::App& sub, std::size_t cap) {
  auto [start, steps] = parse_model_expression(o.model);
  // Steps from options, in command-line order.
  std::vector<UpdateStep> round_steps;
  std::size_t iw = 0, ia = 0, ii = 0;
  for (const auto* opt : sub.parse_order()) {
    if (opt->get_name() == "--with") round_steps.push_back({UpdateStep::Kind::pattern, o.with.at(iw++)});
    else if (opt->get_name() == "--with-action")
      round_steps.push_back({UpdateStep::Kind::action, o.with_action.at(ia++)});
    else if (opt->get_name() == "--with-induced")
      round_steps.push_back({UpdateStep::Kind::induced, o.with_induced.at(ii++)});
  }
  for (std::size_t r = 0; r < o.rounds; ++r) steps.insert(steps.end(), round_steps.begin(), round_steps.end());
  auto result = run_pipeline(ws, start, steps, o.history, cap);
  emit_model(result.model, o.format, start);
  return kTrue;
}

int cmd_check(const Workspace& ws, const Options& o, std::size_t cap) {
  const auto& args = o.check_args;
  if (o.valid ? args.size() != 2 : args.size() != 3)
    throw ParseError(o.valid ? "usage: check MODEL FORMULA --valid" : "usage: check MODEL WORLD FORMULA");
  auto evaluated = evaluate_expression(ws, args[0], o.history, cap);
  auto ctx = ws.context();
  auto f = ws.has_formula(args.back()) ? ws.formula(args.back()) : parse_formula(args.back(), ctx);
  ModelChecker checker(cap);
  bool value = false;
  if (o.history) {
    const auto& truth = checker.evaluate(*evaluated.history, f);
    if (o.valid) {
      value = std::all_of(truth.begin(), truth.end(), [](char t) { return t != 0; });
    } else {
      value = truth.at(world_of(evaluated.model, args[1])) != 0;
    }
  } else if (o.valid) {
    value = checker.valid_on(evaluated.model, f);
  } else {
    value = checker.satisfies(evaluated.model, world_of(evaluated.model, args[1]), f);
  }
  std::cout << (value ? "true" : "false") << '\n';
  return value ? kTrue : kFalse;
}

int cmd_bisim(const Workspace& ws, const Options& o, std::size_t cap) {
  auto x = evaluate_expression(ws, o.left, o.history, cap).model;
  auto y = evaluate_expression(ws, o.right, o.history, cap).model;
  if (o.iso) {
    auto mapping = find_isomorphism(x, y);
    std::cout << (mapping ? "isomorphic" : "not isomorphic") << '\n';
    if (mapping && o.witness)
      for (WorldId w = 0; w < mapping->size(); ++w)
        std::cout << "  " << x.world_name(w) << " -> " << y.world_name((*mapping)[w]) << '\n';
    return mapping ? kTrue : kFalse;
  }
  if (!o.points.empty() && o.points.size() != 2) throw ParseError("--points takes two world names");
  BisimResult result;
  if (o.bound) {
    if (o.points.empty()) throw ParseError("--bound needs --points");
    result = n_bisimilar_result(x, world_of(x, o.points[0]), y, world_of(y, o.points[1]), *o.bound);
  } else if (!o.points.empty()) {
    result = bisimilar(x, world_of(x, o.points[0]), y, world_of(y, o.points[1]), o.witness);
  } else {
    result = bisimilar(x, y, o.witness);
  }
  std::cout << (result.related ? "bisimilar" : "not bisimilar");
  if (o.bound) std::cout << " (bound " << *o.bound << ")";
  std::cout << '\n';
  if (!result.related && result.distinguishing_depth)
    std::cout << "distinguishing modal depth: " << *result.distinguishing_depth << '\n';
  if (o.witness)
    for (auto [v, w] : result.witness)
      std::cout << "  " << x.world_name(v) << " ~ " << y.world_name(w) << '\n';
  return result.related ? kTrue : kFalse;
}

int cmd_induce(const Workspace& ws, const Options& o) {
  auto pattern = ws.pattern(o.pattern);
  std::vector<Atom> atoms;
  if (o.atoms.empty()) {
    atoms = ws.atoms();
  } else {
    for (const auto& text : o.atoms) atoms.push_back(parse_atom(text, ws.context()));
  }
  auto u = o.round <= 1 ? induced_action_model(pattern, atoms)
                        : round_action_model(pattern, atoms, o.round);
  auto doc = action_model_to_json(u);
  doc["name"] = u.name();
  std::cout << doc.dump(2) << '\n';
  return kTrue;
}

int cmd_search(const Workspace& ws, const Options& o, std::size_t cap) {
  if (o.bases.empty()) throw ParseError("search needs --bases");
  std::vector<PointedModel> bases;
  std::vector<std::string> names;
  for (const auto& b : o.bases) {
    auto m = evaluate_expression(ws, b, false, cap).model;
    std::vector<WorldId> all(m.size());
    for (WorldId w = 0; w < m.size(); ++w) all[w] = w;
    names.push_back(b);
    bases.emplace_back(std::move(m), std::move(all));
  }
  UpdateSpec target = [&]() -> UpdateSpec {
    auto colon = o.target.find(':');
    if (colon != std::string::npos) {
      auto p = ws.pattern(o.target.substr(0, colon));
      auto g = parse_graph_literal(o.target.substr(colon + 1), ws.agents());
      return PatternTarget{p, p->index_of(g)};
    }
    if (ws.context().patterns.count(o.target)) return PatternTarget{ws.pattern(o.target), std::nullopt};
    return MultiPointedActionModel(ws.action_model(o.target));
  }();
  SearchOptions options;
  options.max_pattern_size = o.max_pattern_size;
  auto report = search_patterns(bases, target, options);

  std::cout << "graphs: " << report.graph_count << ", pattern sizes 1.." << report.max_pattern_size
            << (report.whole_space ? " (whole space)" : " (capped)") << '\n';
  std::cout << "pattern\tresult\n";
  for (const auto& c : report.outcomes) {
    std::cout << c.pattern.name() << '\t';
    if (c.equivalent) std::cout << "equivalent on all bases";
    else if (c.structural) std::cout << "target not executable at " << names[c.failing_base] << "," << bases[c.failing_base].model.world_name(c.failing_point);
    else std::cout << "differs at " << names[c.failing_base] << "," << bases[c.failing_base].model.world_name(c.failing_point);
    std::cout << '\n';
  }
  if (report.found) {
    std::cout << "equivalent pattern on these bases: " << report.found->name() << '\n';
    return kTrue;
  }
  std::cout << "no equivalent found within search space\n";
  return kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic epistemic logic workbench: communication patterns and action models"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--workspace", o.workspace, "Workspace JSON file (default: built-in fixtures)");

  auto* update = app.add_subcommand("update", "Apply updates to a model and print the result");
  update->add_option("model", o.model, "Model name or expression such as 'Sq odot IS'")->required();
  update->add_option("--with", o.with, "Communication pattern step")->take_all();
  update->add_option("--with-action", o.with_action, "Action model step")->take_all();
  update->add_option("--with-induced", o.with_induced, "Induced action model step for a pattern")->take_all();
  update->add_option("--rounds", o.rounds, "Repeat the steps this many times")->check(CLI::NonNegativeNumber);
  update->add_flag("--history", o.history, "History-based rounds");
  update->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));

  auto* check = app.add_subcommand("check", "Evaluate a formula: MODEL WORLD FORMULA, or MODEL FORMULA --valid");
  check->add_option("args", o.check_args, "Model expression, world, formula")->required();
  check->add_flag("--valid", o.valid, "Check validity on the model");
  check->add_flag("--history", o.history, "History-based semantics");

  auto* bisim = app.add_subcommand("bisim", "Collective bisimilarity or isomorphism of two models");
  bisim->add_option("left", o.left, "Model expression")->required();
  bisim->add_option("right", o.right, "Model expression")->required();
  bisim->add_option("--points", o.points, "A world of each model")->expected(2);
  bisim->add_option("--bound", o.bound, "Bounded bisimulation depth (needs --points)");
  bisim->add_flag("--iso", o.iso, "Decide isomorphism instead");
  bisim->add_flag("--witness", o.witness, "Print the relation");
  bisim->add_flag("--history", o.history, "Build both models with history rounds");

  auto* induce = app.add_subcommand("induce", "Emit the induced action model of a pattern");
  induce->add_option("pattern", o.pattern, "Pattern name")->required();
  induce->add_option("--round", o.round, "Round n: atoms include history variables of earlier rounds")
      ->check(CLI::PositiveNumber);
  induce->add_option("--atoms", o.atoms, "Atoms (default: all workspace atoms)");

  auto* minimize_cmd = app.add_subcommand("minimize", "Bisimulation quotient of a model");
  minimize_cmd->add_option("model", o.model, "Model expression")->required();
  minimize_cmd->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));

  auto* iunf = app.add_subcommand("iunf", "Translate a pattern formula into update normal form");
  iunf->add_option("formula", o.formula, "Formula")->required();

  auto* search = app.add_subcommand("search", "Look for a pattern with the same update effect on given bases");
  search->add_option("--bases", o.bases, "Base model expressions (all worlds are points)")->required()->delimiter(',');
  search->add_option("--target", o.target, "Action model, pattern, or PATTERN:{graph}")->required();
  search->add_option("--max-pattern-size", o.max_pattern_size, "Largest pattern tried (0: default cap)");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a model");
  dot->add_option("model", o.model, "Model expression")->required();
  dot->add_flag("--history", o.history, "History-based rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    const auto cap = max_worlds_from_env();
    const auto ws = load_workspace(o.workspace);
    if (update->parsed()) return cmd_update(ws, o, *update, cap);
    if (check->parsed()) return cmd_check(ws, o, cap);
    if (bisim->parsed()) return cmd_bisim(ws, o, cap);
    if (induce->parsed()) return cmd_induce(ws, o);
    if (minimize_cmd->parsed()) {
      emit_model(minimize(evaluate_expression(ws, o.model, false, cap).model), o.format, o.model);
      return kTrue;
    }
    if (iunf->parsed()) {
      auto f = ws.resolve_formula(o.formula);
      std::cout << to_string(iunf_translate(f)) << '\n';
      return kTrue;
    }
    if (search->parsed()) return cmd_search(ws, o, cap);
    if (dot->parsed()) {
      std::cout << to_dot(evaluate_expression(ws, o.model, o.history, cap).model, o.model);
      return kTrue;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
