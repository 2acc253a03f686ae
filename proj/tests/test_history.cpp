#include <doctest.h>

#include "epiupdate/action.hpp"
#include "epiupdate/bisim.hpp"
#include "epiupdate/checker.hpp"
#include "epiupdate/error.hpp"
#include "epiupdate/fixtures.hpp"
#include "epiupdate/history.hpp"
#include "epiupdate/workspace.hpp"
#include "support.hpp"

using namespace epi;
namespace fx = epi::fixtures;

namespace {

std::vector<std::string> true_atom_names(const EpistemicModel& m, WorldId w) {
  std::vector<std::string> out;
  for (const auto& a : m.true_atoms(w)) out.push_back(to_string(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<testing::Graph> graphs_of(const CommPattern& p) {
  std::vector<testing::Graph> out;
  for (const auto& g : p.graphs()) out.push_back(testing::to_graph(g));
  return out;
}

}  // namespace

TEST_CASE("views") {
  const auto ag = fx::two_agents();
  CHECK(view_of(0, {})->is_empty());
  CHECK(view_of(0, {fx::graph_ab()})->serialize(ag) == "a");
  CHECK(view_of(1, {fx::graph_ab()})->serialize(ag) == "ab");
  const std::vector<CommGraph> sigma{fx::graph_ab(), fx::graph_ba()};
  CHECK(view_of(0, sigma)->serialize(ag) == "(a,ab).ab");
  CHECK(view_of(1, sigma)->serialize(ag) == "ab.b");
  CHECK(to_string(history_variable(ag, 0, *view_of(0, sigma))) == "((a,ab).ab)_a");
  CHECK(to_string(history_variable(ag, 1, *view_of(1, {fx::graph_ab()}))) == "ab_b");
  for (const char* text : {"a", "ab", "(a,ab).ab", "ab.b", "((a,ab).ab,ab.b).ab"})
    CHECK(parse_view(text, ag)->serialize(ag) == text);
  CHECK_THROWS_AS(parse_view("(a,ab", ag), ParseError);
}

TEST_CASE("views agree with the reference serialisation") {
  testing::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto ag = testing::random_agents(rng);
    const auto all = enumerate_graphs(ag);
    std::vector<CommGraph> sigma;
    std::vector<testing::Graph> ref_sigma;
    const auto len = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t k = 0; k < len; ++k) {
      sigma.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
      ref_sigma.push_back(testing::to_graph(sigma.back()));
    }
    for (AgentIndex a = 0; a < ag.size(); ++a) {
      const auto s = view_of(a, sigma)->serialize(ag);
      CHECK(s == testing::ref_view(ag.names(), a, ref_sigma));
      CHECK(*parse_view(s, ag) == *view_of(a, sigma));
    }
  }
}

TEST_CASE("history rounds on the square") {
  const auto is = fx::immediate_snapshot();
  const HistoryModel h0(fx::square());
  CHECK(h0.round() == 0);
  for (WorldId w = 0; w < h0.size(); ++w)
    for (const auto& a : h0.model().true_atoms(w)) CHECK_FALSE(a.is_history());

  const auto h1 = history_update(h0, is);
  CHECK(h1.size() == 12);
  CHECK(true_atom_names(h1.model(), h1.model().world("11.Rab")) ==
        std::vector<std::string>{"a_a", "ab_b", "p_a", "p_b"});
  CHECK(is_local(h1.model()));

  const auto h2 = history_update(h1, is);
  CHECK(true_atom_names(h2.model(), h2.model().world("11.Rab.Rba")) ==
        std::vector<std::string>{"((a,ab).ab)_a", "(ab.b)_b", "a_a", "ab_b", "p_a", "p_b"});
  CHECK(h2.round() == 2);
  CHECK(h2.find(3, {fx::graph_ab(), fx::graph_ba()}) == h2.model().world("11.Rab.Rba"));

  const auto with_history = ModelBuilder(fx::two_agents(), {Atom::history("a", "a")})
                                .world("x", {Atom::history("a", "a")})
                                .build();
  CHECK_THROWS_AS(HistoryModel{with_history}, ModelError);
}

TEST_CASE("history variables do not record received values") {
  // b hears from a in both worlds and gets the same view ab, yet the worlds
  // differ in p_a, which b now knows: equal b-local valuations, not b-related
  const auto h = history_rounds(fx::square(), fx::immediate_snapshot(), 1);
  const auto& m = h.model();
  const auto x = m.world("00.Rab"), y = m.world("10.Rab");
  CHECK(m.local_valuation(x, AgentSet::single(1)) == m.local_valuation(y, AgentSet::single(1)));
  CHECK_FALSE(m.relation(1).related(x, y));
  CHECK_FALSE(is_interpreted_system(m));
  const auto ref = testing::ref_history_rounds(testing::from_model(fx::square()),
                                               graphs_of(*fx::immediate_snapshot()), 1);
  CHECK_FALSE(testing::ref_is_interpreted_system(ref));
}

TEST_CASE("history semantics") {
  const auto ws = Workspace::builtin();
  const HistoryModel h0(fx::square());
  const auto w = h0.model().world("11");
  CHECK(history_satisfies(h0, w, ws.resolve_formula("[IS:{a->b}] a_a")));
  CHECK(history_satisfies(h0, w, ws.resolve_formula("(D{a,b} p_a <-> p_a)")));

  // K_a ab_b after a->b, computed on the reference round-1 model
  const auto f = ws.resolve_formula("[IS:{a->b}] K a ab_b");
  const auto is = fx::immediate_snapshot();
  const auto ref1 = testing::ref_history_rounds(testing::from_model(fx::square()), graphs_of(*is), 1);
  const auto inner = testing::ref_eval(ref1, ws.resolve_formula("K a ab_b"));
  const bool expected = inner[w * is->size() + is->index_of(fx::graph_ab())] != 0;
  CHECK(history_satisfies(h0, w, f) == expected);

  ModelChecker checker;
  CHECK_THROWS_AS(checker.evaluate(h0, ws.resolve_formula("[ann.yes] p_a")), ModelError);
}

TEST_CASE("history rounds agree with the reference construction") {
  testing::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto ag = testing::random_agents(rng);
    const auto atoms = testing::random_atoms(rng, ag);
    const auto m = testing::random_interpreted_system(rng, ag, atoms);
    const auto p = testing::random_pattern(rng, ag, 3);
    const std::size_t n = 1 + static_cast<std::size_t>(i % 2);
    const auto h = history_rounds(m, p, n);
    const auto ref = testing::ref_history_rounds(testing::from_model(m), graphs_of(*p), n);
    const auto got = testing::from_model(h.model());
    CHECK(got.rel == ref.rel);
    CHECK(got.val == ref.val);
    CHECK(is_local(h.model()));
    CHECK(is_interpreted_system(h.model()) == testing::ref_is_interpreted_system(got));

    auto plain = m;
    for (std::size_t k = 0; k < n; ++k) plain = pattern_update(plain, *p);
    const auto forgotten = restrict_vocabulary(h.model(), [](const Atom& a) { return !a.is_history(); });
    CHECK(forgotten.relations() == plain.relations());
    CHECK(forgotten.world_names() == plain.world_names());
  }
}

TEST_CASE("round action models") {
  const auto is = fx::immediate_snapshot();
  const std::vector<Atom> base{fx::p_a(), fx::p_b()};
  CHECK(history_atoms(*is, 0).empty());
  CHECK(history_atoms(*is, 1).size() == 4);
  CHECK(history_atoms_before(*is, 2).size() == 4);
  const auto u1 = round_action_model(is, base, 1);
  CHECK(u1.size() == 12);
  CHECK(u1.name() == "U1(IS)");
  const auto u2 = round_action_model(is, base, 2);
  CHECK(u2.size() == 3 * (std::size_t{1} << 6));

  const auto sq = fx::square();
  const auto c = compose(std::make_shared<const ActionModel>(u1), u2);
  CHECK(bisimilar(action_update(sq, c), action_update(action_update(sq, u1), u2)).related);
}

TEST_CASE("sequence points of composed round models") {
  const auto is = fx::immediate_snapshot();
  const std::vector<Atom> base{fx::p_a(), fx::p_b()};
  const auto c = compose(std::make_shared<const ActionModel>(round_action_model(is, base, 1)),
                         round_action_model(is, base, 2));
  const auto graph_label = [](const std::string& id) { return id.substr(1, id.find(',') - 1); };
  std::size_t total = 0;
  for (std::size_t g1 = 0; g1 < is->size(); ++g1)
    for (std::size_t g2 = 0; g2 < is->size(); ++g2) {
      const auto points = sequence_points(c, {is->graph(g1), is->graph(g2)});
      CHECK(points.size() == 4 * 64);
      total += points.size();
      for (auto e : points) {
        const auto& id = c.action_name(e);
        const auto cut = id.find(';');
        REQUIRE(cut != std::string::npos);
        CHECK(graph_label(id.substr(0, cut)) == graph_name(is->agents(), is->graph(g1)));
        CHECK(graph_label(id.substr(cut + 1)) == graph_name(is->agents(), is->graph(g2)));
      }
    }
  CHECK(total == c.size());
  CHECK_THROWS_AS(sequence_points(c, {is->graph(0)}), ModelError);
}

TEST_CASE("history rounds against explicit round action models") {
  testing::Rng rng(12);
  for (int i = 0; i < 15; ++i) {
    const auto ag = testing::random_agents(rng, 2);
    const auto atoms = testing::random_atoms(rng, ag, 1);
    const auto m = testing::random_interpreted_system(rng, ag, atoms);
    const auto p = testing::random_pattern(rng, ag, 2);
    HistoryModel explicit_h(m), lazy_h(m);
    for (std::size_t n = 1; n <= 2; ++n) {
      explicit_h = history_action_update(explicit_h, round_action_model(p, atoms, n));
      lazy_h = history_induced_update(lazy_h, p, atoms);
      const auto target = history_rounds(m, p, n);
      CHECK(bisimilar(explicit_h.model(), target.model()).related);
      CHECK(bisimilar(lazy_h.model(), target.model()).related);
      CHECK(isomorphic(lazy_h.model(), explicit_h.model()));
    }
  }
}

TEST_CASE("relayed values are lost by the round action models") {
  // a -> b -> c for two rounds: c learns p_a through b under the history
  // update, while U^2 only compares atoms owned by R c = {b, c}
  const Agents ag{"a", "b", "c"};
  const std::vector<Atom> atoms{Atom::base("p", "a")};
  const auto m = full_interpreted_system(ag, atoms);
  const auto p = std::make_shared<const CommPattern>(
      "Relay", ag, std::vector<CommGraph>{CommGraph::from_edges(3, {{0, 1}, {1, 2}})});
  const auto by_pattern = history_rounds(m, p, 2);
  HistoryModel by_action(m);
  std::vector<ActionModel> rounds;
  for (std::size_t n = 1; n <= 2; ++n) {
    rounds.push_back(round_action_model(p, atoms, n));
    by_action = history_action_update(by_action, rounds.back());
  }
  const auto lazy = history_induced_update(history_induced_update(HistoryModel(m), p, atoms), p, atoms);
  CHECK(isomorphic(lazy.model(), by_action.model()));

  const auto ref_pattern = testing::ref_history_rounds(testing::from_model(m), graphs_of(*p), 2);
  const auto ref_action = testing::ref_history_action_rounds(testing::from_model(m), rounds);
  CHECK(testing::from_model(by_action.model()).rel == ref_action.rel);
  CHECK(testing::from_model(by_action.model()).val == ref_action.val);

  const auto knows = Formula::know("c", Formula::atom(atoms[0]));
  // p_a true; one graph, so world 1 on both sides
  const WorldId w = 1;
  CHECK(by_pattern.model().world_name(w).rfind("1.", 0) == 0);
  CHECK(by_action.model().world_name(w).rfind("1.", 0) == 0);
  CHECK(testing::ref_eval(ref_pattern, knows)[w]);
  CHECK_FALSE(testing::ref_eval(ref_action, knows)[w]);
  CHECK_FALSE(testing::ref_whole_bisimilar(ref_pattern, ref_action));
  CHECK_FALSE(bisimilar(by_pattern.model(), by_action.model()).related);
  CHECK_FALSE(is_interpreted_system(history_rounds(m, p, 1).model()));
}
