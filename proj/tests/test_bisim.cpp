#include <doctest.h>

#include "epiupdate/action.hpp"
#include "epiupdate/bisim.hpp"
#include "epiupdate/checker.hpp"
#include "epiupdate/error.hpp"
#include "epiupdate/fixtures.hpp"
#include "support.hpp"

using namespace epi;
namespace fx = epi::fixtures;

namespace {

EpistemicModel renamed(const EpistemicModel& m, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<Valuation> vals;
  for (WorldId w = 0; w < m.size(); ++w) {
    names.push_back(prefix + m.world_name(w));
    vals.push_back(m.valuation(w));
  }
  return EpistemicModel(m.agents(), m.vocabulary(), names, vals, m.relations());
}

}  // namespace

TEST_CASE("maximal bisimulation on fixed models") {
  const auto sq = fx::square();
  CHECK(max_collective_bisimulation(sq) == Partition::identity(4));
  const auto is = fx::immediate_snapshot();
  const auto sq_is = pattern_update(sq, *is);
  const auto sq_is_is = pattern_update(sq_is, *is);
  CHECK(max_collective_bisimulation(sq_is_is).block_count() == 36);
  CHECK(minimize(sq_is_is).size() == 36);

  const auto u = disjoint_union(sq_is, sq_is);
  const auto z = max_collective_bisimulation(u);
  CHECK(z.block_count() == sq_is.size());
  for (WorldId w = 0; w < sq_is.size(); ++w)
    CHECK(z.related(w, static_cast<WorldId>(w + sq_is.size())));
  CHECK(minimize(disjoint_union(sq, sq)).size() == 4);
}

TEST_CASE("square model bisimilarity claims") {
  const auto is = fx::immediate_snapshot();
  const auto sq = fx::square();
  const auto sq_is = pattern_update(sq, *is);
  const auto lazy = induced_update(sq, *is, {fx::p_a(), fx::p_b()});
  for (WorldId i = 0; i < lazy.model.size(); ++i) {
    const auto [w, j] = lazy.origin[i];
    CHECK(bisimilar(sq_is, static_cast<WorldId>(w * is->size() + j), lazy.model, i).related);
  }
  const auto lhs = pattern_update(sq_is, *is);
  const auto rhs = action_update(sq_is, induced_action_model(is, {fx::p_a(), fx::p_b()}));
  const auto r = bisimilar(lhs, rhs);
  CHECK_FALSE(r.related);
  REQUIRE(r.distinguishing_depth);
  CHECK(*r.distinguishing_depth == 2);
  CHECK(testing::ref_whole_bisimilar(testing::from_model(lhs), testing::from_model(rhs)) == false);
  CHECK(bisimilar(sq, 3, sq, 3).related);
}

TEST_CASE("bounded bisimulation in Sq (.) IS") {
  const auto sq_is = pattern_update(fx::square(), *fx::immediate_snapshot());
  const auto x = sq_is.world("11.Rba"), y = sq_is.world("11.U");
  const auto k = testing::from_model(sq_is);
  for (std::size_t n = 0; n <= 6; ++n)
    CHECK(n_bisimilar(sq_is, x, sq_is, y, n) == testing::ref_n_bisimilar(k, x, k, y, n));
  CHECK(n_bisimilar(sq_is, x, sq_is, y, 0));
  CHECK(n_bisimilar(sq_is, x, sq_is, y, 50) == bisimilar(sq_is, x, sq_is, y).related);
}

TEST_CASE("bisimulation agrees with the reference fixpoint") {
  testing::Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    const auto ag = testing::random_agents(rng);
    const auto atoms = testing::random_atoms(rng, ag);
    const auto m = (i % 2) ? testing::random_local_model(rng, ag, atoms, 5)
                           : testing::random_interpreted_system(rng, ag, atoms);
    const auto p = testing::random_pattern(rng, ag, 3);
    const auto x = pattern_update(m, *p);
    const auto y = action_update(m, induced_action_model(p, atoms));
    const auto kx = testing::from_model(x), ky = testing::from_model(y);
    const auto z = testing::ref_bisimulation(kx, ky);
    for (WorldId v = 0; v < x.size(); ++v)
      for (WorldId w = 0; w < y.size(); ++w) CHECK(bisimilar(x, v, y, w).related == (z[v][w] != 0));
    CHECK(bisimilar(x, y).related == testing::ref_whole_bisimilar(kx, ky));
    CHECK(agentwise_bisimilar(x, y) == testing::ref_whole_bisimilar(kx, ky, false));

    const auto wv = static_cast<WorldId>(std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng));
    const auto ww = static_cast<WorldId>(std::uniform_int_distribution<std::size_t>(0, y.size() - 1)(rng));
    bool previous = true;
    for (std::size_t n = 0; n <= 4; ++n) {
      const bool now = n_bisimilar(x, wv, y, ww, n);
      CHECK(now == testing::ref_n_bisimilar(kx, wv, ky, ww, n));
      CHECK((previous || !now));
      previous = now;
    }
  }
}

TEST_CASE("bounded bisimilarity preserves formulas of bounded depth") {
  testing::Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const auto ag = testing::random_agents(rng);
    ParseContext ctx;
    ctx.agents = ag;
    ctx.atoms = testing::random_atoms(rng, ag);
    const auto m = testing::random_local_model(rng, ag, ctx.atoms, 6);
    for (std::size_t n = 0; n <= 2; ++n)
      for (WorldId v = 0; v < m.size(); ++v)
        for (WorldId w = 0; w < m.size(); ++w) {
          if (!n_bisimilar(m, v, m, w, n)) continue;
          for (int k = 0; k < 3; ++k) {
            const auto f = testing::random_formula(rng, ctx, n, false);
            if (modal_depth(f) > n) continue;
            CHECK(satisfies(m, v, f) == satisfies(m, w, f));
          }
        }
  }
}

TEST_CASE("minimize") {
  testing::Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    const auto ag = testing::random_agents(rng);
    const auto atoms = testing::random_atoms(rng, ag);
    const auto m = testing::random_interpreted_system(rng, ag, atoms);
    const auto p = testing::random_pattern(rng, ag, 3);
    const auto x = pattern_update(m, *p);
    try {
      const auto q = minimize(x);
      CHECK(bisimilar(q, x).related);
      CHECK(max_collective_bisimulation(q).block_count() == q.size());
      const CommPattern identity("I", ag, {CommGraph::identity(ag.size())});
      CHECK(isomorphic(minimize(pattern_update(x, identity)), q));
    } catch (const ModelError&) {
      // quotient not bisimilar: reported, never returned
    }
  }
  const auto m = fx::byzantine_initial();
  CHECK(isomorphic(minimize(pattern_update(m, *fx::identity_pattern())), minimize(m)));
}

TEST_CASE("isomorphism") {
  const auto sq = fx::square();
  CHECK(isomorphic(sq, renamed(sq, "x")));
  CHECK_FALSE(isomorphic(sq, pattern_update(sq, *fx::immediate_snapshot())));
  const auto m = fx::byzantine_initial();
  const auto x = pattern_update(m, *fx::byzantine());
  const auto y = action_update(m, induced_action_model(fx::byzantine(), {fx::p_a()}));
  const auto iso = find_isomorphism(x, y);
  REQUIRE(iso);
  for (AgentIndex a = 0; a < 2; ++a)
    for (WorldId v = 0; v < x.size(); ++v)
      for (WorldId w = 0; w < x.size(); ++w)
        CHECK(x.relation(a).related(v, w) == y.relation(a).related((*iso)[v], (*iso)[w]));
  CHECK_FALSE(isomorphic(pattern_update(sq, *fx::byzantine()), pattern_update(sq, *fx::universal_pattern())));
}
