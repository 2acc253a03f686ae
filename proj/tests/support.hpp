#pragma once

// Random structure generators and brute-force reference implementations used
// to cross-check the library. The references work on explicit relation
// matrices and string valuations and share no code paths with the library's
// partition-based algorithms.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epiupdate/action.hpp"
#include "epiupdate/comm.hpp"
#include "epiupdate/formula.hpp"
#include "epiupdate/model.hpp"
#include "epiupdate/parser.hpp"

namespace testing {

using Rng = std::mt19937_64;

// --- Generators -------------------------------------------------------------

epi::Agents random_agents(Rng& rng, std::size_t max_agents = 3);
/// Up to `per_agent` atoms (p, q) for every agent; at least one atom overall.
std::vector<epi::Atom> random_atoms(Rng& rng, const epi::Agents& agents, std::size_t per_agent = 2);
/// Interpreted system over a random nonempty set of valuations.
epi::EpistemicModel random_interpreted_system(Rng& rng, const epi::Agents& agents,
                                              const std::vector<epi::Atom>& atoms);
/// Local model: worlds with random valuations, each agent's local-valuation
/// classes randomly split further.
epi::EpistemicModel random_local_model(Rng& rng, const epi::Agents& agents,
                                       const std::vector<epi::Atom>& atoms,
                                       std::size_t max_worlds = 8);
std::shared_ptr<const epi::CommPattern> random_pattern(Rng& rng, const epi::Agents& agents,
                                                       std::size_t max_graphs = 8,
                                                       const std::string& name = "P");
/// At most `depth` nested modal operators (D and pattern modalities).
epi::Formula random_formula(Rng& rng, const epi::ParseContext& ctx, std::size_t depth,
                            bool with_patterns = true);

// --- Reference implementations ---------------------------------------------

struct Kripke {
  std::vector<std::string> agents;
  std::vector<std::string> names;
  std::vector<std::set<std::string>> val;
  /// rel[a][v][w]
  std::vector<std::vector<std::vector<char>>> rel;

  std::size_t size() const { return names.size(); }
};

Kripke from_model(const epi::EpistemicModel& m);

/// Senders per receiver, by agent name: graph[receiver] = set of senders.
using Graph = std::vector<std::set<std::size_t>>;
Graph to_graph(const epi::CommGraph& g);

/// M (.) P straight from the definition; world (w, j) at index w*|P| + j.
Kripke ref_pattern_update(const Kripke& m, const std::vector<Graph>& pattern);
/// M (x) U with preconditions evaluated by ref_eval.
Kripke ref_action_update(const Kripke& m, const epi::ActionModel& u);
/// M (x) U(P) over `atoms`: actions (R, Q) compared by Ra and by Q restricted
/// to atoms owned by Ra; (R, Q) fires at v iff Q = L(v) & atoms.
Kripke ref_induced_update(const Kripke& m, const std::vector<Graph>& pattern,
                          const std::vector<std::string>& atoms,
                          const std::vector<std::string>& atom_owners);

/// Truth set of a formula by direct recursion on the semantic clauses.
std::vector<char> ref_eval(const Kripke& m, const epi::Formula& f);

/// Greatest collective bisimulation between two models as a relation matrix,
/// by deleting violating pairs until nothing changes.
std::vector<std::vector<char>> ref_bisimulation(const Kripke& x, const Kripke& y,
                                                bool collective = true);
bool ref_whole_bisimilar(const Kripke& x, const Kripke& y, bool collective = true);
/// Z^n of the bounded bisimulation, by the recursive definition.
bool ref_n_bisimilar(const Kripke& x, std::size_t v, const Kripke& y, std::size_t w, std::size_t n);

bool ref_is_local(const Kripke& m);
bool ref_is_interpreted_system(const Kripke& m);

/// Serialised view of `agent` on the history `sigma` (graphs by senders).
std::string ref_view(const std::vector<std::string>& agents, std::size_t agent,
                     const std::vector<Graph>& sigma);
/// M (.)^n P built round by round, history variables written as `(view)_a` strings.
Kripke ref_history_rounds(const Kripke& m, const std::vector<Graph>& pattern, std::size_t rounds);

/// M (x) U^1 (x) ... (x) U^n with every product world labelled by the history
/// variables of its new round, the round's graph read off each action's trace.
Kripke ref_history_action_rounds(const Kripke& m, const std::vector<epi::ActionModel>& rounds);

}  // namespace testing
