#pragma once

#include <cstdint>
#include <vector>

namespace epi {

using WorldId = std::uint32_t;

/// An equivalence relation on {0..n-1}, stored as a block index per element.
/// Block indices are canonical: numbered in order of first appearance, so two
/// partitions are equal iff they describe the same relation.
class Partition {
 public:
  Partition() = default;
  /// Any labelling works; it is renumbered canonically.
  explicit Partition(const std::vector<std::uint32_t>& labels);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<WorldId>>& blocks);
  static Partition identity(std::size_t n);
  static Partition total(std::size_t n);

  std::size_t size() const { return block_of_.size(); }
  std::size_t block_count() const { return block_count_; }
  std::uint32_t block(WorldId w) const { return block_of_[w]; }
  bool related(WorldId v, WorldId w) const { return block_of_[v] == block_of_[w]; }
  const std::vector<std::uint32_t>& labels() const { return block_of_; }

  /// Members of every block, each block sorted, blocks in canonical order.
  std::vector<std::vector<WorldId>> blocks() const;

  /// True iff every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> block_of_;
  std::size_t block_count_ = 0;
};

/// Common refinement (intersection of the two relations).
Partition meet(const Partition& x, const Partition& y);

/// FNV-style hash for index vectors used as refinement signatures.
struct IndexVectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Canonical partition of the indices by equality of the given keys.
template <class Key, class KeyHash = std::hash<Key>>
Partition partition_by(const std::vector<Key>& keys);

}  // namespace epi

#include <unordered_map>

namespace epi {

template <class Key, class KeyHash>
Partition partition_by(const std::vector<Key>& keys) {
  std::unordered_map<Key, std::uint32_t, KeyHash> ids;
  std::vector<std::uint32_t> labels;
  labels.reserve(keys.size());
  for (const auto& k : keys) {
    auto [it, inserted] = ids.try_emplace(k, static_cast<std::uint32_t>(ids.size()));
    labels.push_back(it->second);
  }
  return Partition(labels);
}

}  // namespace epi
