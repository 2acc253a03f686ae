#include "epiupdate/model.hpp"

#include <algorithm>
#include <map>

#include "epiupdate/error.hpp"

namespace epi {

EpistemicModel::EpistemicModel(Agents agents, std::vector<Atom> vocabulary,
                               std::vector<std::string> world_names,
                               std::vector<Valuation> valuations, std::vector<Partition> relations)
    : agents_(std::move(agents)),
      vocabulary_(std::move(vocabulary)),
      names_(std::move(world_names)),
      valuations_(std::move(valuations)),
      relations_(std::move(relations)) {
  if (agents_.empty()) throw ModelError("a model needs at least one agent");
  if (!std::is_sorted(vocabulary_.begin(), vocabulary_.end()) ||
      std::adjacent_find(vocabulary_.begin(), vocabulary_.end()) != vocabulary_.end())
    throw ModelError("vocabulary must be sorted and duplicate-free");
  if (valuations_.size() != names_.size()) throw ModelError("one valuation per world required");
  if (relations_.size() != agents_.size()) throw ModelError("one relation per agent required");
  for (const auto& r : relations_)
    if (r.size() != names_.size()) throw ModelError("relation does not cover the worlds");

  owner_index_.reserve(vocabulary_.size());
  for (const auto& atom : vocabulary_) {
    if (!agents_.contains(atom.owner))
      throw ModelError("atom " + to_string(atom) + " is owned by an unknown agent");
    owner_index_.push_back(agents_.index(atom.owner));
  }
  for (auto& v : valuations_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (!v.empty() && v.back() >= vocabulary_.size())
      throw ModelError("valuation refers to an atom outside the vocabulary");
  }

  // Locality: every a-block is constant on a-owned atoms.
  for (AgentIndex a = 0; a < agents_.size(); ++a) {
    const auto& rel = relations_[a];
    std::vector<std::int64_t> representative(rel.block_count(), -1);
    const auto owned = atoms_owned_by(AgentSet::single(a));
    for (WorldId w = 0; w < names_.size(); ++w) {
      auto& rep = representative[rel.block(w)];
      if (rep < 0) {
        rep = w;
        continue;
      }
      for (auto i : owned) {
        if (holds(w, i) != holds(static_cast<WorldId>(rep), i)) {
          throw ModelError("model is not local: agent " + agents_.name(a) + " relates worlds " +
                           names_[rep] + " and " + names_[w] + " which disagree on " +
                           to_string(vocabulary_[i]));
        }
      }
    }
  }
}

WorldId EpistemicModel::world(std::string_view name) const {
  if (auto w = find_world(name)) return *w;
  throw ModelError("unknown world '" + std::string(name) + "'");
}

std::optional<WorldId> EpistemicModel::find_world(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<WorldId>(it - names_.begin());
}

std::vector<Atom> EpistemicModel::true_atoms(WorldId w) const {
  std::vector<Atom> out;
  for (auto i : valuations_.at(w)) out.push_back(vocabulary_[i]);
  return out;
}

std::optional<std::uint32_t> EpistemicModel::atom_index(const Atom& atom) const {
  auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), atom);
  if (it == vocabulary_.end() || !(*it == atom)) return std::nullopt;
  return static_cast<std::uint32_t>(it - vocabulary_.begin());
}

bool EpistemicModel::holds(WorldId w, std::uint32_t atom_index) const {
  const auto& v = valuations_[w];
  return std::binary_search(v.begin(), v.end(), atom_index);
}

bool EpistemicModel::holds(WorldId w, const Atom& atom) const {
  auto i = atom_index(atom);
  return i && holds(w, *i);
}

std::vector<std::uint32_t> EpistemicModel::atoms_owned_by(AgentSet group) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < owner_index_.size(); ++i)
    if (group.contains(owner_index_[i])) out.push_back(i);
  return out;
}

Valuation EpistemicModel::local_valuation(WorldId w, AgentSet group) const {
  Valuation out;
  for (auto i : valuations_.at(w))
    if (group.contains(owner_index_[i])) out.push_back(i);
  return out;
}

PointedModel::PointedModel(EpistemicModel m, std::vector<WorldId> pts)
    : model(std::move(m)), points(std::move(pts)) {
  if (points.empty()) throw ModelError("a pointed model needs at least one point");
  for (auto w : points)
    if (w >= model.size()) throw ModelError("point outside the model");
}

// --- ModelBuilder -----------------------------------------------------------

ModelBuilder::ModelBuilder(Agents agents, std::vector<Atom> vocabulary)
    : agents_(std::move(agents)), vocabulary_(normalized(std::move(vocabulary))) {
  blocks_.resize(agents_.size());
}

ModelBuilder& ModelBuilder::world(std::string name, const std::vector<Atom>& true_atoms) {
  if (std::find(names_.begin(), names_.end(), name) != names_.end())
    throw ModelError("duplicate world name '" + name + "'");
  Valuation v;
  for (const auto& atom : true_atoms) {
    auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), atom);
    if (it == vocabulary_.end() || !(*it == atom))
      throw ModelError("atom " + to_string(atom) + " is not declared");
    v.push_back(static_cast<std::uint32_t>(it - vocabulary_.begin()));
  }
  names_.push_back(std::move(name));
  valuations_.push_back(std::move(v));
  return *this;
}

ModelBuilder& ModelBuilder::blocks(std::string_view agent,
                                   const std::vector<std::vector<std::string>>& blocks) {
  blocks_.at(agents_.index(agent)) = blocks;
  return *this;
}

EpistemicModel ModelBuilder::build() const {
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents_.size(); ++a) {
    if (blocks_[a]) {
      std::vector<std::vector<WorldId>> ids;
      for (const auto& block : *blocks_[a]) {
        std::vector<WorldId> members;
        for (const auto& n : block) {
          auto it = std::find(names_.begin(), names_.end(), n);
          if (it == names_.end()) throw ModelError("unknown world '" + n + "' in relation");
          members.push_back(static_cast<WorldId>(it - names_.begin()));
        }
        ids.push_back(std::move(members));
      }
      relations.push_back(Partition::from_blocks(names_.size(), ids));
    } else {
      // Interpreted-system default: equal a-local valuation.
      std::vector<Valuation> keys;
      for (const auto& v : valuations_) {
        Valuation local;
        for (auto i : v)
          if (vocabulary_[i].owner == agents_.name(a)) local.push_back(i);
        std::sort(local.begin(), local.end());
        keys.push_back(std::move(local));
      }
      relations.push_back(partition_by<Valuation, IndexVectorHash>(keys));
    }
  }
  return EpistemicModel(agents_, vocabulary_, names_, valuations_, std::move(relations));
}

// --- Operations -------------------------------------------------------------

EpistemicModel full_interpreted_system(const Agents& agents, const std::vector<Atom>& atoms) {
  auto vocab = normalized(atoms);
  if (vocab.size() > 24) throw LimitError("too many atoms for a full interpreted system");
  const std::size_t n = std::size_t{1} << vocab.size();
  std::vector<std::string> names;
  std::vector<Valuation> vals;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string name;
    Valuation v;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      // First atom is the leftmost digit.
      const bool on = (mask >> (vocab.size() - 1 - i)) & 1u;
      name += on ? '1' : '0';
      if (on) v.push_back(static_cast<std::uint32_t>(i));
    }
    names.push_back(vocab.empty() ? "w" : name);
    vals.push_back(std::move(v));
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < agents.size(); ++a) {
    std::vector<Valuation> keys;
    for (const auto& v : vals) {
      Valuation local;
      for (auto i : v)
        if (vocab[i].owner == agents.name(a)) local.push_back(i);
      keys.push_back(std::move(local));
    }
    relations.push_back(partition_by<Valuation, IndexVectorHash>(keys));
  }
  return EpistemicModel(agents, std::move(vocab), std::move(names), std::move(vals),
                        std::move(relations));
}

bool is_local(const EpistemicModel& model) {
  for (AgentIndex a = 0; a < model.agents().size(); ++a) {
    const auto& rel = model.relation(a);
    std::vector<std::int64_t> rep(rel.block_count(), -1);
    for (WorldId w = 0; w < model.size(); ++w) {
      auto& r = rep[rel.block(w)];
      if (r < 0) r = w;
      else if (model.local_valuation(w, AgentSet::single(a)) !=
               model.local_valuation(static_cast<WorldId>(r), AgentSet::single(a)))
        return false;
    }
  }
  return true;
}

bool is_interpreted_system(const EpistemicModel& model) {
  if (!is_local(model)) return false;
  for (AgentIndex a = 0; a < model.agents().size(); ++a) {
    std::vector<Valuation> keys;
    for (WorldId w = 0; w < model.size(); ++w)
      keys.push_back(model.local_valuation(w, AgentSet::single(a)));
    if (partition_by<Valuation, IndexVectorHash>(keys) != model.relation(a)) return false;
  }
  return true;
}

Partition group_relation(const EpistemicModel& model, AgentSet group) {
  if (group.empty()) throw ModelError("distributed knowledge needs a nonempty group");
  if (!group.subset_of(model.agents().all())) throw ModelError("group contains unknown agents");
  auto members = group.members();
  Partition out = model.relation(members.front());
  for (std::size_t i = 1; i < members.size(); ++i) out = meet(out, model.relation(members[i]));
  return out;
}

Partition group_relation(const EpistemicModel& model, const std::vector<std::string>& group) {
  return group_relation(model, model.agents().set_of(group));
}

EpistemicModel disjoint_union(const EpistemicModel& x, const EpistemicModel& y,
                              std::string_view x_prefix, std::string_view y_prefix) {
  if (!(x.agents() == y.agents())) throw ModelError("disjoint union over different agents");
  std::vector<Atom> vocab = x.vocabulary();
  vocab.insert(vocab.end(), y.vocabulary().begin(), y.vocabulary().end());
  vocab = normalized(std::move(vocab));
  auto remap = [&](const EpistemicModel& m) {
    std::vector<std::uint32_t> out;
    for (const auto& atom : m.vocabulary())
      out.push_back(static_cast<std::uint32_t>(
          std::lower_bound(vocab.begin(), vocab.end(), atom) - vocab.begin()));
    return out;
  };
  const auto rx = remap(x), ry = remap(y);
  std::vector<std::string> names;
  std::vector<Valuation> vals;
  for (WorldId w = 0; w < x.size(); ++w) {
    names.push_back(std::string(x_prefix) + x.world_name(w));
    Valuation v;
    for (auto i : x.valuation(w)) v.push_back(rx[i]);
    vals.push_back(std::move(v));
  }
  for (WorldId w = 0; w < y.size(); ++w) {
    names.push_back(std::string(y_prefix) + y.world_name(w));
    Valuation v;
    for (auto i : y.valuation(w)) v.push_back(ry[i]);
    vals.push_back(std::move(v));
  }
  std::vector<Partition> relations;
  for (AgentIndex a = 0; a < x.agents().size(); ++a) {
    std::vector<std::uint32_t> labels;
    const auto offset = static_cast<std::uint32_t>(x.relation(a).block_count());
    for (WorldId w = 0; w < x.size(); ++w) labels.push_back(x.relation(a).block(w));
    for (WorldId w = 0; w < y.size(); ++w) labels.push_back(offset + y.relation(a).block(w));
    relations.emplace_back(labels);
  }
  return EpistemicModel(x.agents(), std::move(vocab), std::move(names), std::move(vals),
                        std::move(relations));
}

}  // namespace epi
