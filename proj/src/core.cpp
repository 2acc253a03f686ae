#include <algorithm>
#include <unordered_map>

#include "epiupdate/agents.hpp"
#include "epiupdate/atom.hpp"
#include "epiupdate/error.hpp"
#include "epiupdate/partition.hpp"

namespace epi {

void check_size_limit(std::size_t size, std::size_t limit, const char* what) {
  if (size > limit) {
    throw LimitError(std::string(what) + " would have " + std::to_string(size) +
                     " elements, above the cap of " + std::to_string(limit));
  }
}

// --- Agents ---------------------------------------------------------------

Agents::Agents(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end())
    throw ModelError("duplicate agent name");
  if (names_.size() > 32) throw ModelError("at most 32 agents are supported");
  for (const auto& n : names_)
    if (n.empty()) throw ModelError("empty agent name");
}

bool Agents::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

AgentIndex Agents::index(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) throw ModelError("unknown agent '" + std::string(name) + "'");
  return static_cast<AgentIndex>(it - names_.begin());
}

AgentSet Agents::set_of(const std::vector<std::string>& names) const {
  AgentSet s;
  for (const auto& n : names) s = s.with(index(n));
  return s;
}

std::vector<std::string> Agents::names_of(AgentSet set) const {
  std::vector<std::string> out;
  for (auto a : set.members()) out.push_back(names_.at(a));
  return out;
}

bool Agents::single_char_names() const {
  return std::all_of(names_.begin(), names_.end(), [](const auto& n) { return n.size() == 1; });
}

std::string Agents::render(AgentSet set) const {
  std::string out;
  const bool compact = single_char_names();
  for (auto a : set.members()) {
    if (!compact && !out.empty()) out += '+';
    out += names_.at(a);
  }
  return out;
}

std::vector<AgentSet> Agents::nonempty_subsets() const {
  std::vector<AgentSet> out;
  const std::uint32_t n = static_cast<std::uint32_t>(names_.size());
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits) out.emplace_back(bits);
  return out;
}

// --- Atom -----------------------------------------------------------------

std::string to_string(const Atom& atom) {
  if (atom.is_history() && atom.name.find_first_of(".,+") != std::string::npos)
    return "(" + atom.name + ")_" + atom.owner;
  return atom.name + "_" + atom.owner;
}

std::vector<Atom> normalized(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

// --- Partition ------------------------------------------------------------

Partition::Partition(const std::vector<std::uint32_t>& labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  block_of_.reserve(labels.size());
  for (auto l : labels) {
    auto [it, inserted] = renumber.try_emplace(l, static_cast<std::uint32_t>(renumber.size()));
    block_of_.push_back(it->second);
  }
  block_count_ = renumber.size();
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<WorldId>>& blocks) {
  constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> labels(n, unset);
  std::uint32_t next = 0;
  for (const auto& b : blocks) {
    for (auto w : b) {
      if (w >= n) throw ModelError("block member out of range");
      if (labels[w] != unset) throw ModelError("world listed in two blocks");
      labels[w] = next;
    }
    ++next;
  }
  for (auto& l : labels)
    if (l == unset) l = next++;
  return Partition(labels);
}

Partition Partition::identity(std::size_t n) {
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::uint32_t>(i);
  return Partition(labels);
}

Partition Partition::total(std::size_t n) { return Partition(std::vector<std::uint32_t>(n, 0)); }

std::vector<std::vector<WorldId>> Partition::blocks() const {
  std::vector<std::vector<WorldId>> out(block_count_);
  for (WorldId w = 0; w < block_of_.size(); ++w) out[block_of_[w]].push_back(w);
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.size() != size()) return false;
  std::vector<std::int64_t> image(block_count_, -1);
  for (WorldId w = 0; w < block_of_.size(); ++w) {
    auto& img = image[block_of_[w]];
    if (img < 0) img = coarser.block(w);
    else if (img != coarser.block(w)) return false;
  }
  return true;
}

Partition meet(const Partition& x, const Partition& y) {
  if (x.size() != y.size()) throw ModelError("meet of partitions over different sets");
  std::vector<std::uint64_t> keys(x.size());
  for (WorldId w = 0; w < x.size(); ++w)
    keys[w] = (static_cast<std::uint64_t>(x.block(w)) << 32) | y.block(w);
  return partition_by(keys);
}

}  // namespace epi
