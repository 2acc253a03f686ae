#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace testing {

using namespace epi;

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

}  // namespace

Agents random_agents(Rng& rng, std::size_t max_agents) {
  static const std::vector<std::string> pool{"a", "b", "c"};
  const auto n = uniform(rng, 1, std::min(max_agents, pool.size()));
  return Agents(std::vector<std::string>(pool.begin(), pool.begin() + n));
}

std::vector<Atom> random_atoms(Rng& rng, const Agents& agents, std::size_t per_agent) {
  static const std::vector<std::string> names{"p", "q"};
  std::vector<Atom> out;
  for (const auto& a : agents.names()) {
    const auto k = uniform(rng, 0, std::min(per_agent, names.size()));
    for (std::size_t i = 0; i < k; ++i) out.push_back(Atom::base(names[i], a));
  }
  if (out.empty()) out.push_back(Atom::base("p", agents.name(0)));
  return normalized(out);
}

EpistemicModel random_interpreted_system(Rng& rng, const Agents& agents,
                                         const std::vector<Atom>& atoms) {
  const std::size_t total = std::size_t{1} << atoms.size();
  std::vector<std::size_t> chosen;
  while (chosen.empty())
    for (std::size_t m = 0; m < total; ++m)
      if (coin(rng)) chosen.push_back(m);
  ModelBuilder b(agents, atoms);
  for (auto m : chosen) {
    std::vector<Atom> t;
    std::string name;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const bool on = (m >> (atoms.size() - 1 - i)) & 1;
      name += on ? '1' : '0';
      if (on) t.push_back(atoms[i]);
    }
    b.world(name, t);
  }
  return b.build();
}

EpistemicModel random_local_model(Rng& rng, const Agents& agents, const std::vector<Atom>& atoms,
                                  std::size_t max_worlds) {
  const auto n = uniform(rng, 1, max_worlds);
  std::vector<std::vector<Atom>> vals(n);
  ModelBuilder b(agents, atoms);
  for (std::size_t w = 0; w < n; ++w) {
    for (const auto& at : atoms)
      if (coin(rng)) vals[w].push_back(at);
    b.world("w" + std::to_string(w), vals[w]);
  }
  for (const auto& a : agents.names()) {
    // Key: local valuation plus a random split label in {0, 1}.
    std::map<std::pair<std::vector<Atom>, std::size_t>, std::vector<std::string>> groups;
    const bool split = coin(rng);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<Atom> local;
      for (const auto& at : vals[w])
        if (at.owner == a) local.push_back(at);
      groups[{local, split ? uniform(rng, 0, 1) : 0}].push_back("w" + std::to_string(w));
    }
    std::vector<std::vector<std::string>> blocks;
    for (auto& [k, v] : groups) blocks.push_back(v);
    b.blocks(a, blocks);
  }
  return b.build();
}

std::shared_ptr<const CommPattern> random_pattern(Rng& rng, const Agents& agents,
                                                  std::size_t max_graphs, const std::string& name) {
  const auto all = enumerate_graphs(agents);
  const auto k = uniform(rng, 1, std::min(max_graphs, all.size()));
  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<CommGraph> gs;
  for (std::size_t i = 0; i < k; ++i) gs.push_back(all[idx[i]]);
  return std::make_shared<const CommPattern>(name, agents, gs);
}

Formula random_formula(Rng& rng, const ParseContext& ctx, std::size_t depth, bool with_patterns) {
  std::vector<std::shared_ptr<const CommPattern>> pats;
  if (with_patterns)
    for (const auto& [n, p] : ctx.patterns) pats.push_back(p);
  const auto choices = depth == 0 ? 3 : (pats.empty() ? 5 : 6);
  switch (uniform(rng, 0, choices - 1)) {
    case 0:
    case 1:
      return Formula::atom(ctx.atoms[uniform(rng, 0, ctx.atoms.size() - 1)]);
    case 2:
      if (depth == 0) return Formula::negation(Formula::atom(ctx.atoms[uniform(rng, 0, ctx.atoms.size() - 1)]));
      return Formula::negation(random_formula(rng, ctx, depth, with_patterns));
    case 3:
      return Formula::conjunction(random_formula(rng, ctx, depth - 1, with_patterns),
                                  random_formula(rng, ctx, depth - 1, with_patterns));
    case 4: {
      const auto subsets = ctx.agents.nonempty_subsets();
      const auto g = subsets[uniform(rng, 0, subsets.size() - 1)];
      return Formula::dknow(ctx.agents.names_of(g), random_formula(rng, ctx, depth - 1, with_patterns));
    }
    default: {
      const auto& p = pats[uniform(rng, 0, pats.size() - 1)];
      return Formula::pattern_update(p, uniform(rng, 0, p->size() - 1),
                                     random_formula(rng, ctx, depth - 1, with_patterns));
    }
  }
}

// --- Reference implementations ---------------------------------------------

Kripke from_model(const EpistemicModel& m) {
  Kripke k;
  k.agents = m.agents().names();
  k.names = m.world_names();
  for (WorldId w = 0; w < m.size(); ++w) {
    std::set<std::string> s;
    for (const auto& a : m.true_atoms(w)) s.insert(to_string(a));
    k.val.push_back(std::move(s));
  }
  const auto n = m.size();
  k.rel.assign(k.agents.size(), std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  for (std::size_t a = 0; a < k.agents.size(); ++a)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        k.rel[a][v][w] = m.relation(static_cast<AgentIndex>(a)).block(static_cast<WorldId>(v)) ==
                         m.relation(static_cast<AgentIndex>(a)).block(static_cast<WorldId>(w));
  return k;
}

Graph to_graph(const CommGraph& g) {
  Graph out(g.agent_count());
  for (std::size_t to = 0; to < g.agent_count(); ++to)
    for (std::size_t from = 0; from < g.agent_count(); ++from)
      if (g.edge(static_cast<AgentIndex>(from), static_cast<AgentIndex>(to))) out[to].insert(from);
  return out;
}

namespace {

std::vector<Graph> graphs_of(const CommPattern& p) {
  std::vector<Graph> out;
  for (const auto& g : p.graphs()) out.push_back(to_graph(g));
  return out;
}

bool group_related(const Kripke& m, const std::set<std::size_t>& group, std::size_t v, std::size_t w) {
  for (auto a : group)
    if (!m.rel[a][v][w]) return false;
  return true;
}

Kripke empty_like(const Kripke& m, std::size_t n) {
  Kripke k;
  k.agents = m.agents;
  k.rel.assign(m.agents.size(), std::vector<std::vector<char>>(n, std::vector<char>(n, 0)));
  return k;
}

std::vector<std::set<std::size_t>> all_groups(std::size_t n, bool collective) {
  std::vector<std::set<std::size_t>> out;
  if (!collective) {
    for (std::size_t a = 0; a < n; ++a) out.push_back({a});
    return out;
  }
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::set<std::size_t> g;
    for (std::size_t a = 0; a < n; ++a)
      if ((mask >> a) & 1) g.insert(a);
    out.push_back(g);
  }
  return out;
}

}  // namespace

Kripke ref_pattern_update(const Kripke& m, const std::vector<Graph>& pattern) {
  const auto k = pattern.size();
  Kripke out = empty_like(m, m.size() * k);
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::size_t j = 0; j < k; ++j) {
      out.names.push_back(m.names[w] + "." + std::to_string(j));
      out.val.push_back(m.val[w]);
    }
  for (std::size_t a = 0; a < m.agents.size(); ++a)
    for (std::size_t v = 0; v < m.size(); ++v)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t w = 0; w < m.size(); ++w)
          for (std::size_t j = 0; j < k; ++j)
            out.rel[a][v * k + i][w * k + j] =
                pattern[i][a] == pattern[j][a] && group_related(m, pattern[i][a], v, w);
  return out;
}

namespace {

struct Product {
  Kripke model;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
};

Product ref_action_product(const Kripke& m, const ActionModel& u) {
  std::vector<std::vector<char>> pre;
  for (std::size_t e = 0; e < u.size(); ++e) pre.push_back(ref_eval(m, u.precondition(e)));
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (std::size_t e = 0; e < u.size(); ++e)
      if (pre[e][v]) origin.push_back({v, e});
  Product p{empty_like(m, origin.size()), origin};
  for (auto [v, e] : origin) {
    p.model.names.push_back(m.names[v] + "." + u.action_name(e));
    p.model.val.push_back(m.val[v]);
  }
  for (std::size_t a = 0; a < m.agents.size(); ++a)
    for (std::size_t x = 0; x < origin.size(); ++x)
      for (std::size_t y = 0; y < origin.size(); ++y)
        p.model.rel[a][x][y] =
            m.rel[a][origin[x].first][origin[y].first] &&
            u.relation(static_cast<AgentIndex>(a)).related(static_cast<WorldId>(origin[x].second),
                                                           static_cast<WorldId>(origin[y].second));
  return p;
}

}  // namespace

Kripke ref_action_update(const Kripke& m, const ActionModel& u) {
  return ref_action_product(m, u).model;
}

Kripke ref_induced_update(const Kripke& m, const std::vector<Graph>& pattern,
                          const std::vector<std::string>& atoms,
                          const std::vector<std::string>& atom_owners) {
  const auto k = pattern.size();
  Kripke out = empty_like(m, m.size() * k);
  std::vector<std::set<std::string>> q(m.size());
  for (std::size_t v = 0; v < m.size(); ++v)
    for (const auto& at : atoms)
      if (m.val[v].count(at)) q[v].insert(at);
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::size_t j = 0; j < k; ++j) {
      out.names.push_back(m.names[w] + "." + std::to_string(j));
      out.val.push_back(m.val[w]);
    }
  auto owner_index = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(m.agents.begin(), m.agents.end(), name) - m.agents.begin());
  };
  for (std::size_t a = 0; a < m.agents.size(); ++a)
    for (std::size_t v = 0; v < m.size(); ++v)
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t w = 0; w < m.size(); ++w)
          for (std::size_t j = 0; j < k; ++j) {
            bool same = m.rel[a][v][w] && pattern[i][a] == pattern[j][a];
            for (std::size_t t = 0; same && t < atoms.size(); ++t)
              if (pattern[i][a].count(owner_index(atom_owners[t])))
                same = q[v].count(atoms[t]) == q[w].count(atoms[t]);
            out.rel[a][v * k + i][w * k + j] = same;
          }
  return out;
}

std::vector<char> ref_eval(const Kripke& m, const Formula& f) {
  const auto n = m.size();
  std::vector<char> out(n, 0);
  switch (f.kind()) {
    case FormulaKind::top:
      std::fill(out.begin(), out.end(), 1);
      break;
    case FormulaKind::atom: {
      const auto s = to_string(f.atom());
      for (std::size_t w = 0; w < n; ++w) out[w] = m.val[w].count(s) > 0;
      break;
    }
    case FormulaKind::negation: {
      const auto x = ref_eval(m, f.operand());
      for (std::size_t w = 0; w < n; ++w) out[w] = !x[w];
      break;
    }
    case FormulaKind::conjunction: {
      const auto x = ref_eval(m, f.left());
      const auto y = ref_eval(m, f.right());
      for (std::size_t w = 0; w < n; ++w) out[w] = x[w] && y[w];
      break;
    }
    case FormulaKind::distributed_knowledge: {
      std::set<std::size_t> group;
      for (const auto& g : f.group())
        group.insert(static_cast<std::size_t>(std::find(m.agents.begin(), m.agents.end(), g) - m.agents.begin()));
      const auto x = ref_eval(m, f.operand());
      for (std::size_t v = 0; v < n; ++v) {
        out[v] = 1;
        for (std::size_t w = 0; w < n; ++w)
          if (group_related(m, group, v, w) && !x[w]) out[v] = 0;
      }
      break;
    }
    case FormulaKind::pattern_update: {
      const auto gs = graphs_of(*f.pattern());
      const auto x = ref_eval(ref_pattern_update(m, gs), f.operand());
      for (std::size_t w = 0; w < n; ++w) out[w] = x[w * gs.size() + f.graph()];
      break;
    }
    case FormulaKind::action_update: {
      const auto p = ref_action_product(m, *f.action_model());
      const auto x = ref_eval(p.model, f.operand());
      std::fill(out.begin(), out.end(), 1);
      for (std::size_t i = 0; i < p.origin.size(); ++i)
        if (p.origin[i].second == f.action()) out[p.origin[i].first] = x[i];
      break;
    }
  }
  return out;
}

std::vector<std::vector<char>> ref_bisimulation(const Kripke& x, const Kripke& y, bool collective) {
  const auto n = x.size(), m = y.size();
  std::vector<std::vector<char>> z(n, std::vector<char>(m, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < m; ++w) z[v][w] = x.val[v] == y.val[w];
  const auto groups = all_groups(x.agents.size(), collective);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < m; ++w) {
        if (!z[v][w]) continue;
        bool ok = true;
        for (const auto& g : groups) {
          for (std::size_t v2 = 0; ok && v2 < n; ++v2) {
            if (!group_related(x, g, v, v2)) continue;
            bool found = false;
            for (std::size_t w2 = 0; !found && w2 < m; ++w2)
              found = group_related(y, g, w, w2) && z[v2][w2];
            ok = found;
          }
          for (std::size_t w2 = 0; ok && w2 < m; ++w2) {
            if (!group_related(y, g, w, w2)) continue;
            bool found = false;
            for (std::size_t v2 = 0; !found && v2 < n; ++v2)
              found = group_related(x, g, v, v2) && z[v2][w2];
            ok = found;
          }
          if (!ok) break;
        }
        if (!ok) {
          z[v][w] = 0;
          changed = true;
        }
      }
  }
  return z;
}

bool ref_whole_bisimilar(const Kripke& x, const Kripke& y, bool collective) {
  const auto z = ref_bisimulation(x, y, collective);
  for (std::size_t v = 0; v < x.size(); ++v)
    if (std::none_of(z[v].begin(), z[v].end(), [](char c) { return c != 0; })) return false;
  for (std::size_t w = 0; w < y.size(); ++w) {
    bool any = false;
    for (std::size_t v = 0; v < x.size(); ++v) any = any || z[v][w];
    if (!any) return false;
  }
  return true;
}

bool ref_n_bisimilar(const Kripke& x, std::size_t v0, const Kripke& y, std::size_t w0, std::size_t n) {
  const auto groups = all_groups(x.agents.size(), true);
  std::vector<std::vector<char>> z(x.size(), std::vector<char>(y.size(), 0));
  for (std::size_t v = 0; v < x.size(); ++v)
    for (std::size_t w = 0; w < y.size(); ++w) z[v][w] = x.val[v] == y.val[w];
  for (std::size_t round = 0; round < n; ++round) {
    auto next = z;
    for (std::size_t v = 0; v < x.size(); ++v)
      for (std::size_t w = 0; w < y.size(); ++w) {
        if (!z[v][w]) continue;
        bool ok = true;
        for (const auto& g : groups) {
          for (std::size_t v2 = 0; ok && v2 < x.size(); ++v2) {
            if (!group_related(x, g, v, v2)) continue;
            bool found = false;
            for (std::size_t w2 = 0; !found && w2 < y.size(); ++w2)
              found = group_related(y, g, w, w2) && z[v2][w2];
            ok = found;
          }
          for (std::size_t w2 = 0; ok && w2 < y.size(); ++w2) {
            if (!group_related(y, g, w, w2)) continue;
            bool found = false;
            for (std::size_t v2 = 0; !found && v2 < x.size(); ++v2)
              found = group_related(x, g, v, v2) && z[v2][w2];
            ok = found;
          }
        }
        next[v][w] = ok;
      }
    z = std::move(next);
  }
  return z[v0][w0];
}

namespace {

std::set<std::string> owned(const Kripke& m, std::size_t w, const std::string& agent) {
  std::set<std::string> out;
  for (const auto& s : m.val[w])
    if (s.size() > agent.size() + 1 && s.compare(s.size() - agent.size() - 1, std::string::npos, "_" + agent) == 0)
      out.insert(s);
  return out;
}

}  // namespace

bool ref_is_local(const Kripke& m) {
  for (std::size_t a = 0; a < m.agents.size(); ++a)
    for (std::size_t v = 0; v < m.size(); ++v)
      for (std::size_t w = 0; w < m.size(); ++w)
        if (m.rel[a][v][w] && owned(m, v, m.agents[a]) != owned(m, w, m.agents[a])) return false;
  return true;
}

bool ref_is_interpreted_system(const Kripke& m) {
  if (!ref_is_local(m)) return false;
  for (std::size_t a = 0; a < m.agents.size(); ++a)
    for (std::size_t v = 0; v < m.size(); ++v)
      for (std::size_t w = 0; w < m.size(); ++w)
        if (!m.rel[a][v][w] && owned(m, v, m.agents[a]) == owned(m, w, m.agents[a])) return false;
  return true;
}

std::string ref_view(const std::vector<std::string>& agents, std::size_t agent,
                     const std::vector<Graph>& sigma) {
  if (sigma.empty()) return {};
  const auto& last = sigma.back();
  std::string root;
  bool long_names = false;
  for (const auto& n : agents) long_names = long_names || n.size() > 1;
  for (auto b : last[agent]) {
    if (!root.empty() && long_names) root += '+';
    root += agents[b];
  }
  if (sigma.size() == 1) return root;
  const std::vector<Graph> before(sigma.begin(), sigma.end() - 1);
  std::vector<std::string> kids;
  for (auto b : last[agent]) kids.push_back(ref_view(agents, b, before));
  if (kids.size() == 1) return kids[0] + "." + root;
  std::string out = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? "," : "") + kids[i];
  return out + ")." + root;
}

Kripke ref_history_rounds(const Kripke& m, const std::vector<Graph>& pattern, std::size_t rounds) {
  Kripke cur = m;
  std::vector<std::vector<Graph>> hist(m.size());
  for (std::size_t r = 0; r < rounds; ++r) {
    Kripke next = ref_pattern_update(cur, pattern);
    std::vector<std::vector<Graph>> nh;
    for (std::size_t w = 0; w < cur.size(); ++w)
      for (std::size_t j = 0; j < pattern.size(); ++j) {
        auto s = hist[w];
        s.push_back(pattern[j]);
        nh.push_back(s);
      }
    for (std::size_t x = 0; x < next.size(); ++x)
      for (std::size_t a = 0; a < m.agents.size(); ++a) {
        const auto v = ref_view(m.agents, a, nh[x]);
        const bool wrap = v.find_first_of(".,+") != std::string::npos;
        next.val[x].insert((wrap ? "(" + v + ")" : v) + "_" + m.agents[a]);
      }
    cur = std::move(next);
    hist = std::move(nh);
  }
  return cur;
}

Kripke ref_history_action_rounds(const Kripke& m, const std::vector<ActionModel>& rounds) {
  Kripke cur = m;
  std::vector<std::vector<Graph>> hist(m.size());
  for (const auto& u : rounds) {
    if (!u.trace()) throw std::invalid_argument("round action model without a trace");
    const auto& trace = *u.trace();
    auto p = ref_action_product(cur, u);
    std::vector<std::vector<Graph>> nh;
    for (std::size_t x = 0; x < p.origin.size(); ++x) {
      const auto [v, e] = p.origin[x];
      auto s = hist[v];
      s.push_back(to_graph(trace.patterns.back()->graph(trace.graphs[e].back())));
      for (std::size_t a = 0; a < m.agents.size(); ++a) {
        const auto view = ref_view(m.agents, a, s);
        const bool wrap = view.find_first_of(".,+") != std::string::npos;
        p.model.val[x].insert((wrap ? "(" + view + ")" : view) + "_" + m.agents[a]);
      }
      nh.push_back(std::move(s));
    }
    cur = std::move(p.model);
    hist = std::move(nh);
  }
  return cur;
}

}  // namespace testing
