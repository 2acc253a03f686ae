#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epiupdate/agents.hpp"
#include "epiupdate/atom.hpp"
#include "epiupdate/partition.hpp"

namespace epi {

/// Indices into a model's vocabulary, sorted ascending.
using Valuation = std::vector<std::uint32_t>;

/// A finite local epistemic model (W, ~, L).
///
/// Every agent's relation is a Partition, so it is an equivalence relation by
/// construction. The vocabulary lists the atoms the model talks about; atoms
/// outside it are false everywhere. Construction rejects non-local models.
/// Instances are immutable.
class EpistemicModel {
 public:
  EpistemicModel() = default;

  /// Throws ModelError if sizes disagree, a valuation index is out of range,
  /// an atom owner is not an agent, or some a-block disagrees on a-owned atoms.
  EpistemicModel(Agents agents, std::vector<Atom> vocabulary, std::vector<std::string> world_names,
                 std::vector<Valuation> valuations, std::vector<Partition> relations);

  const Agents& agents() const { return agents_; }
  const std::vector<Atom>& vocabulary() const { return vocabulary_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  const std::string& world_name(WorldId w) const { return names_.at(w); }
  const std::vector<std::string>& world_names() const { return names_; }
  /// Throws ModelError when no world has that name.
  WorldId world(std::string_view name) const;
  std::optional<WorldId> find_world(std::string_view name) const;

  const Valuation& valuation(WorldId w) const { return valuations_[w]; }
  std::vector<Atom> true_atoms(WorldId w) const;
  std::optional<std::uint32_t> atom_index(const Atom& atom) const;
  bool holds(WorldId w, std::uint32_t atom_index) const;
  bool holds(WorldId w, const Atom& atom) const;

  const Partition& relation(AgentIndex a) const { return relations_.at(a); }
  const std::vector<Partition>& relations() const { return relations_; }

  /// Vocabulary indices of atoms owned by members of `group`.
  std::vector<std::uint32_t> atoms_owned_by(AgentSet group) const;
  /// Valuation of `w` restricted to atoms owned by `group` (L(w)_B).
  Valuation local_valuation(WorldId w, AgentSet group) const;

 private:
  Agents agents_;
  std::vector<Atom> vocabulary_;
  std::vector<std::string> names_;
  std::vector<Valuation> valuations_;
  std::vector<Partition> relations_;
  std::vector<AgentIndex> owner_index_;
};

/// A model with one or more designated worlds.
struct PointedModel {
  EpistemicModel model;
  std::vector<WorldId> points;

  PointedModel(EpistemicModel m, std::vector<WorldId> pts);
  PointedModel(EpistemicModel m, WorldId point) : PointedModel(std::move(m), std::vector<WorldId>{point}) {}
};

/// Name-based construction helper used by loaders and fixtures.
class ModelBuilder {
 public:
  ModelBuilder(Agents agents, std::vector<Atom> vocabulary);

  ModelBuilder& world(std::string name, const std::vector<Atom>& true_atoms);
  /// Blocks may omit worlds; omitted worlds become singletons.
  ModelBuilder& blocks(std::string_view agent, const std::vector<std::vector<std::string>>& blocks);
  /// Agents without explicit blocks get the relation induced by local valuations.
  EpistemicModel build() const;

 private:
  Agents agents_;
  std::vector<Atom> vocabulary_;
  std::vector<std::string> names_;
  std::vector<Valuation> valuations_;
  std::vector<std::optional<std::vector<std::vector<std::string>>>> blocks_;
};

/// The interpreted system over `atoms`: every valuation is a world, and agent
/// a relates exactly the worlds with equal a-local valuation. World names are
/// bit strings over the sorted atoms (`10` means first atom true).
EpistemicModel full_interpreted_system(const Agents& agents, const std::vector<Atom>& atoms);

/// v ~a w implies L(v)_a = L(w)_a.
bool is_local(const EpistemicModel& model);
/// Local, and L(v)_a = L(w)_a implies v ~a w.
bool is_interpreted_system(const EpistemicModel& model);

/// ~B, the meet of the members' partitions. Throws ModelError for empty B.
Partition group_relation(const EpistemicModel& model, AgentSet group);
Partition group_relation(const EpistemicModel& model, const std::vector<std::string>& group);

/// The same worlds, relations and valuation with the vocabulary narrowed to
/// atoms satisfying `keep`.
template <class Pred>
EpistemicModel restrict_vocabulary(const EpistemicModel& model, Pred keep);

/// Disjoint union; world names get the given prefixes. Vocabularies are merged.
EpistemicModel disjoint_union(const EpistemicModel& x, const EpistemicModel& y,
                              std::string_view x_prefix = "L:", std::string_view y_prefix = "R:");

}  // namespace epi

namespace epi {

template <class Pred>
EpistemicModel restrict_vocabulary(const EpistemicModel& model, Pred keep) {
  std::vector<Atom> vocab;
  std::vector<std::int64_t> remap(model.vocabulary().size(), -1);
  for (std::size_t i = 0; i < model.vocabulary().size(); ++i) {
    if (keep(model.vocabulary()[i])) {
      remap[i] = static_cast<std::int64_t>(vocab.size());
      vocab.push_back(model.vocabulary()[i]);
    }
  }
  std::vector<Valuation> vals;
  vals.reserve(model.size());
  for (WorldId w = 0; w < model.size(); ++w) {
    Valuation v;
    for (auto i : model.valuation(w))
      if (remap[i] >= 0) v.push_back(static_cast<std::uint32_t>(remap[i]));
    vals.push_back(std::move(v));
  }
  return EpistemicModel(model.agents(), std::move(vocab), model.world_names(), std::move(vals),
                        model.relations());
}

}  // namespace epi
