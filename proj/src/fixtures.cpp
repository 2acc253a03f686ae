#include "epiupdate/fixtures.hpp"

namespace epi::fixtures {

Agents two_agents() { return Agents{"a", "b"}; }
Atom p_a() { return Atom::base("p", "a"); }
Atom p_b() { return Atom::base("p", "b"); }
Atom q_a() { return Atom::base("q", "a"); }

CommGraph identity_graph() { return CommGraph::identity(2); }
CommGraph universal_graph() { return CommGraph::universal(2); }
CommGraph graph_ab() { return CommGraph::from_edges(2, {{0, 1}}); }
CommGraph graph_ba() { return CommGraph::from_edges(2, {{1, 0}}); }

std::shared_ptr<const CommPattern> byzantine() {
  return std::make_shared<const CommPattern>(
      "Byz", two_agents(), std::vector<CommGraph>{identity_graph(), graph_ab()});
}

std::shared_ptr<const CommPattern> immediate_snapshot() {
  return std::make_shared<const CommPattern>(
      "IS", two_agents(), std::vector<CommGraph>{graph_ab(), graph_ba(), universal_graph()});
}

std::shared_ptr<const CommPattern> identity_pattern() {
  return std::make_shared<const CommPattern>("I", two_agents(),
                                             std::vector<CommGraph>{identity_graph()});
}

std::shared_ptr<const CommPattern> universal_pattern() {
  return std::make_shared<const CommPattern>("U", two_agents(),
                                             std::vector<CommGraph>{universal_graph()});
}

EpistemicModel square() { return full_interpreted_system(two_agents(), {p_a(), p_b()}); }

EpistemicModel byzantine_initial() {
  return ModelBuilder(two_agents(), {p_a()})
      .world("w1", {p_a()})
      .world("w2", {})
      .blocks("a", {{"w1"}, {"w2"}})
      .blocks("b", {{"w1", "w2"}})
      .build();
}

EpistemicModel fresh_variable_model() {
  return ModelBuilder(two_agents(), {p_a(), q_a()})
      .world("w1", {p_a(), q_a()})
      .world("w2", {p_a()})
      .blocks("a", {{"w1"}, {"w2"}})
      .blocks("b", {{"w1", "w2"}})
      .build();
}

EpistemicModel pq_square() { return full_interpreted_system(two_agents(), {p_a(), q_a()}); }

std::shared_ptr<const ActionModel> skip() {
  return std::make_shared<const ActionModel>(skip_action_model(two_agents()));
}

std::shared_ptr<const ActionModel> announce_pa_or_pb() {
  auto f = Formula::disjunction(Formula::atom(p_a()), Formula::atom(p_b()));
  return std::make_shared<const ActionModel>(
      "ann", two_agents(), std::vector<std::string>{"yes", "no"},
      std::vector<Partition>(2, Partition::identity(2)),
      std::vector<Formula>{f, Formula::negation(f)});
}

std::shared_ptr<const ActionModel> reveal_pa() {
  auto p = Formula::atom(p_a());
  return std::make_shared<const ActionModel>(
      "reveal", two_agents(), std::vector<std::string>{"p", "np"},
      std::vector<Partition>(2, Partition::identity(2)),
      std::vector<Formula>{p, Formula::negation(p)});
}

}  // namespace epi::fixtures
