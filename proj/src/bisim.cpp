#include "epiupdate/bisim.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "epiupdate/error.hpp"

namespace epi {

namespace {

/// Worlds of one or two models laid end to end, with valuation classes and
/// the group relations to refine along.
struct Universe {
  std::size_t size = 0;
  std::vector<std::uint32_t> valuation_class;
  std::vector<std::vector<std::uint32_t>> relations;  // one labelling per group
};

std::vector<AgentSet> collective_groups(const Agents& agents) { return agents.nonempty_subsets(); }

std::vector<AgentSet> single_groups(const Agents& agents) {
  std::vector<AgentSet> out;
  for (AgentIndex a = 0; a < agents.size(); ++a) out.push_back(AgentSet::single(a));
  return out;
}

Universe make_universe(const std::vector<const EpistemicModel*>& models,
                       const std::vector<AgentSet>& groups) {
  Universe u;
  std::map<std::vector<Atom>, std::uint32_t> val_ids;
  for (const auto* m : models) {
    // Atom-level identity so that models with different vocabularies compare.
    std::vector<std::uint32_t> local_ids;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, IndexVectorHash> cache;
    for (WorldId w = 0; w < m->size(); ++w) {
      auto it = cache.find(m->valuation(w));
      if (it == cache.end()) {
        auto atoms = m->true_atoms(w);
        auto [vit, ins] = val_ids.try_emplace(atoms, static_cast<std::uint32_t>(val_ids.size()));
        it = cache.emplace(m->valuation(w), vit->second).first;
      }
      u.valuation_class.push_back(it->second);
    }
    u.size += m->size();
  }
  u.relations.resize(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::uint32_t offset = 0;
    for (const auto* m : models) {
      auto rel = group_relation(*m, groups[g]);
      for (WorldId w = 0; w < m->size(); ++w) u.relations[g].push_back(offset + rel.block(w));
      offset += static_cast<std::uint32_t>(rel.block_count());
    }
  }
  return u;
}

/// One refinement step; returns the refined partition.
Partition refine_once(const Universe& u, const Partition& current) {
  const std::size_t n = u.size;
  std::vector<std::vector<std::uint32_t>> signature(n);
  for (WorldId w = 0; w < n; ++w) signature[w].push_back(current.block(w));
  for (const auto& rel : u.relations) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs(n);
    for (WorldId w = 0; w < n; ++w) pairs[w] = {rel[w], current.block(w)};
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> reach;
    for (auto [b, c] : pairs) reach[b].push_back(c);
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, IndexVectorHash> ids;
    std::unordered_map<std::uint32_t, std::uint32_t> block_id;
    for (auto& [b, cs] : reach)
      block_id[b] = ids.try_emplace(cs, static_cast<std::uint32_t>(ids.size())).first->second;
    for (WorldId w = 0; w < n; ++w) signature[w].push_back(block_id[rel[w]]);
  }
  return partition_by<std::vector<std::uint32_t>, IndexVectorHash>(signature);
}

struct Refinement {
  std::vector<Partition> rounds;  // rounds[k] = Z^k
  bool stable = false;
};

/// Z^0..Z^limit, stopping early at the fixpoint.
Refinement refine(const Universe& u, std::size_t limit) {
  Refinement r;
  r.rounds.push_back(Partition(u.valuation_class));
  while (r.rounds.size() <= limit) {
    auto next = refine_once(u, r.rounds.back());
    if (next.block_count() == r.rounds.back().block_count()) {
      r.stable = true;
      break;
    }
    r.rounds.push_back(std::move(next));
  }
  return r;
}

std::optional<std::size_t> separation_round(const Refinement& r, WorldId x, WorldId y) {
  for (std::size_t k = 0; k < r.rounds.size(); ++k)
    if (!r.rounds[k].related(x, y)) return k;
  return std::nullopt;
}

Partition coarsest(const EpistemicModel& model, const std::vector<AgentSet>& groups) {
  auto u = make_universe({&model}, groups);
  return refine(u, kNoLimit).rounds.back();
}

struct Joint {
  Universe universe;
  Refinement refinement;
  std::size_t offset;
};

Joint joint(const EpistemicModel& x, const EpistemicModel& y, const std::vector<AgentSet>& groups,
            std::size_t limit) {
  if (!(x.agents() == y.agents())) throw ModelError("bisimulation between models over different agents");
  Joint j{make_universe({&x, &y}, groups), {}, x.size()};
  j.refinement = refine(j.universe, limit);
  return j;
}

bool whole_model_related(const Partition& p, std::size_t nx, std::size_t ny) {
  std::vector<char> in_x(p.block_count()), in_y(p.block_count());
  for (WorldId w = 0; w < nx; ++w) in_x[p.block(w)] = 1;
  for (WorldId w = 0; w < ny; ++w) in_y[p.block(static_cast<WorldId>(nx + w))] = 1;
  return in_x == in_y;
}

std::vector<std::pair<WorldId, WorldId>> witness_pairs(const Partition& p, std::size_t nx,
                                                       std::size_t ny) {
  std::vector<std::vector<WorldId>> ys(p.block_count());
  for (WorldId w = 0; w < ny; ++w) ys[p.block(static_cast<WorldId>(nx + w))].push_back(w);
  std::vector<std::pair<WorldId, WorldId>> out;
  for (WorldId v = 0; v < nx; ++v)
    for (auto w : ys[p.block(v)]) out.emplace_back(v, w);
  return out;
}

}  // namespace

Partition max_collective_bisimulation(const EpistemicModel& model) {
  return coarsest(model, collective_groups(model.agents()));
}

Partition max_agentwise_bisimulation(const EpistemicModel& model) {
  return coarsest(model, single_groups(model.agents()));
}

BisimResult bisimilar(const EpistemicModel& x, WorldId xw, const EpistemicModel& y, WorldId yw,
                      bool with_witness) {
  if (xw >= x.size() || yw >= y.size()) throw UndefinedError("point outside the model");
  auto j = joint(x, y, collective_groups(x.agents()), kNoLimit);
  const auto& p = j.refinement.rounds.back();
  const auto yid = static_cast<WorldId>(j.offset + yw);
  BisimResult r;
  r.related = p.related(xw, yid);
  if (!r.related) r.distinguishing_depth = separation_round(j.refinement, xw, yid);
  if (with_witness && r.related) r.witness = witness_pairs(p, x.size(), y.size());
  return r;
}

BisimResult bisimilar(const EpistemicModel& x, const EpistemicModel& y, bool with_witness) {
  auto j = joint(x, y, collective_groups(x.agents()), kNoLimit);
  const auto& p = j.refinement.rounds.back();
  BisimResult r;
  r.related = whole_model_related(p, x.size(), y.size());
  if (r.related && with_witness) r.witness = witness_pairs(p, x.size(), y.size());
  if (!r.related) {
    // The earliest round at which some world lost all partners.
    for (std::size_t k = 0; k < j.refinement.rounds.size(); ++k)
      if (!whole_model_related(j.refinement.rounds[k], x.size(), y.size())) {
        r.distinguishing_depth = k;
        break;
      }
  }
  return r;
}

bool bisimilar(const EpistemicModel& x, const std::vector<WorldId>& xs, const EpistemicModel& y,
               const std::vector<WorldId>& ys) {
  for (auto w : xs)
    if (w >= x.size()) throw UndefinedError("point outside the model");
  for (auto w : ys)
    if (w >= y.size()) throw UndefinedError("point outside the model");
  auto j = joint(x, y, collective_groups(x.agents()), kNoLimit);
  const auto& p = j.refinement.rounds.back();
  std::vector<char> in_x(p.block_count()), in_y(p.block_count());
  for (auto w : xs) in_x[p.block(w)] = 1;
  for (auto w : ys) in_y[p.block(static_cast<WorldId>(j.offset + w))] = 1;
  return in_x == in_y;
}

bool n_bisimilar(const EpistemicModel& x, WorldId xw, const EpistemicModel& y, WorldId yw,
                 std::size_t n) {
  return n_bisimilar_result(x, xw, y, yw, n).related;
}

BisimResult n_bisimilar_result(const EpistemicModel& x, WorldId xw, const EpistemicModel& y,
                               WorldId yw, std::size_t n) {
  if (xw >= x.size() || yw >= y.size()) throw UndefinedError("point outside the model");
  auto j = joint(x, y, collective_groups(x.agents()), n);
  const auto yid = static_cast<WorldId>(j.offset + yw);
  BisimResult r;
  r.distinguishing_depth = separation_round(j.refinement, xw, yid);
  r.related = !r.distinguishing_depth;
  return r;
}

bool agentwise_bisimilar(const EpistemicModel& x, const EpistemicModel& y) {
  auto j = joint(x, y, single_groups(x.agents()), kNoLimit);
  return whole_model_related(j.refinement.rounds.back(), x.size(), y.size());
}

EpistemicModel minimize(const EpistemicModel& model) {
  const auto p = max_collective_bisimulation(model);
  const std::size_t q = p.block_count();
  std::vector<WorldId> rep(q, static_cast<WorldId>(-1));
  for (WorldId w = 0; w < model.size(); ++w)
    if (rep[p.block(w)] == static_cast<WorldId>(-1)) rep[p.block(w)] = w;

  std::vector<std::string> names;
  std::vector<Valuation> vals;
  for (auto w : rep) {
    names.push_back(model.world_name(w));
    vals.push_back(model.valuation(w));
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < model.agents().size(); ++a) {
    // Union-find over quotient blocks joined by some a-link.
    std::vector<std::uint32_t> parent(q);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    const auto& rel = model.relation(a);
    std::vector<std::int64_t> first(rel.block_count(), -1);
    for (WorldId w = 0; w < model.size(); ++w) {
      auto& f = first[rel.block(w)];
      if (f < 0) f = p.block(w);
      else parent[find(p.block(w))] = find(static_cast<std::uint32_t>(f));
    }
    std::vector<std::uint32_t> labels(q);
    for (std::uint32_t i = 0; i < q; ++i) labels[i] = find(i);
    relations.emplace_back(labels);
  }
  EpistemicModel out(model.agents(), model.vocabulary(), std::move(names), std::move(vals),
                     std::move(relations));
  if (!bisimilar(out, model).related)
    throw ModelError("the bisimulation quotient is not collectively bisimilar to the model");
  return out;
}

std::optional<std::vector<WorldId>> find_isomorphism(const EpistemicModel& x,
                                                     const EpistemicModel& y) {
  if (!(x.agents() == y.agents()) || x.size() != y.size()) return std::nullopt;
  const std::size_t n = x.size();
  const std::size_t na = x.agents().size();
  if (n == 0) return std::vector<WorldId>{};

  // Colour refinement on the union with block-size-aware signatures.
  auto u = make_universe({&x, &y}, single_groups(x.agents()));
  Partition colour(u.valuation_class);
  while (true) {
    std::vector<std::vector<std::uint32_t>> sig(2 * n);
    for (WorldId w = 0; w < 2 * n; ++w) sig[w].push_back(colour.block(w));
    for (const auto& rel : u.relations) {
      std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> members;
      for (WorldId w = 0; w < 2 * n; ++w) members[rel[w]].push_back(colour.block(w));
      std::unordered_map<std::uint32_t, std::uint32_t> block_id;
      std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, IndexVectorHash> ids;
      for (auto& [b, cs] : members) {
        std::sort(cs.begin(), cs.end());
        block_id[b] = ids.try_emplace(cs, static_cast<std::uint32_t>(ids.size())).first->second;
      }
      for (WorldId w = 0; w < 2 * n; ++w) sig[w].push_back(block_id[rel[w]]);
    }
    auto next = partition_by<std::vector<std::uint32_t>, IndexVectorHash>(sig);
    if (next.block_count() == colour.block_count()) break;
    colour = std::move(next);
  }
  {
    std::vector<int> balance(colour.block_count());
    for (WorldId w = 0; w < n; ++w) ++balance[colour.block(w)];
    for (WorldId w = 0; w < n; ++w) --balance[colour.block(static_cast<WorldId>(n + w))];
    for (int b : balance)
      if (b != 0) return std::nullopt;
  }

  // Order x-worlds so that each is linked to an earlier one where possible.
  std::vector<WorldId> order;
  {
    std::vector<char> seen(n);
    std::vector<std::vector<std::vector<WorldId>>> members(na);
    for (AgentIndex a = 0; a < na; ++a) members[a] = x.relation(a).blocks();
    for (WorldId start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::vector<WorldId> queue{start};
      seen[start] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        auto w = queue[i];
        order.push_back(w);
        for (AgentIndex a = 0; a < na; ++a)
          for (auto v : members[a][x.relation(a).block(w)])
            if (!seen[v]) {
              seen[v] = 1;
              queue.push_back(v);
            }
      }
    }
  }
  std::vector<std::vector<WorldId>> candidates(colour.block_count());
  for (WorldId w = 0; w < n; ++w) candidates[colour.block(static_cast<WorldId>(n + w))].push_back(w);

  constexpr std::int64_t none = -1;
  std::vector<std::int64_t> map_xy(n, none), used_y(n, none);
  std::vector<std::vector<std::int64_t>> block_xy(na), block_yx(na);
  for (AgentIndex a = 0; a < na; ++a) {
    block_xy[a].assign(x.relation(a).block_count(), none);
    block_yx[a].assign(y.relation(a).block_count(), none);
  }

  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    const auto v = order[i];
    for (auto w : candidates[colour.block(v)]) {
      if (used_y[w] != none) continue;
      bool ok = true;
      std::vector<AgentIndex> assigned;
      for (AgentIndex a = 0; a < na && ok; ++a) {
        const auto bx = x.relation(a).block(v);
        const auto by = y.relation(a).block(w);
        if (block_xy[a][bx] == none && block_yx[a][by] == none) {
          block_xy[a][bx] = by;
          block_yx[a][by] = bx;
          assigned.push_back(a);
        } else if (block_xy[a][bx] != by || block_yx[a][by] != bx) {
          ok = false;
        }
      }
      if (ok) {
        map_xy[v] = w;
        used_y[w] = v;
        if (extend(i + 1)) return true;
        map_xy[v] = none;
        used_y[w] = none;
      }
      for (auto a : assigned) {
        block_yx[a][y.relation(a).block(w)] = none;
        block_xy[a][x.relation(a).block(v)] = none;
      }
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  std::vector<WorldId> out(n);
  for (WorldId v = 0; v < n; ++v) out[v] = static_cast<WorldId>(map_xy[v]);
  return out;
}

bool isomorphic(const EpistemicModel& x, const EpistemicModel& y) {
  return find_isomorphism(x, y).has_value();
}

}  // namespace epi
