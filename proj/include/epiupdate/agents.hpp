#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace epi {

using AgentIndex = std::uint32_t;

/// Subset of an agent list, one bit per agent index.
class AgentSet {
 public:
  constexpr AgentSet() = default;
  constexpr explicit AgentSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr AgentSet single(AgentIndex a) { return AgentSet(1u << a); }
  static constexpr AgentSet all(std::size_t n) {
    return AgentSet(n >= 32 ? ~0u : ((1u << n) - 1u));
  }

  constexpr bool contains(AgentIndex a) const { return (bits_ >> a) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool subset_of(AgentSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr AgentSet with(AgentIndex a) const { return AgentSet(bits_ | (1u << a)); }
  constexpr AgentSet operator|(AgentSet o) const { return AgentSet(bits_ | o.bits_); }
  constexpr AgentSet operator&(AgentSet o) const { return AgentSet(bits_ & o.bits_); }

  /// Member indices in increasing order.
  std::vector<AgentIndex> members() const {
    std::vector<AgentIndex> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr bool operator==(AgentSet, AgentSet) = default;
  friend constexpr auto operator<=>(AgentSet, AgentSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// The finite, nonempty, sorted set of agent names that every structure is built over.
class Agents {
 public:
  Agents() = default;
  /// Sorts the names; throws ModelError on duplicates, empty names or more than 32 agents.
  explicit Agents(std::vector<std::string> names);
  Agents(std::initializer_list<std::string> names)
      : Agents(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(AgentIndex a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(std::string_view name) const;
  /// Throws ModelError for unknown names.
  AgentIndex index(std::string_view name) const;
  AgentSet set_of(const std::vector<std::string>& names) const;
  AgentSet all() const { return AgentSet::all(names_.size()); }

  /// Sorted names of the members.
  std::vector<std::string> names_of(AgentSet set) const;
  /// Concatenated names (`ab`); joined with `+` when some agent name is longer than one char.
  std::string render(AgentSet set) const;
  bool single_char_names() const;

  /// Every nonempty subset, in increasing bitmask order.
  std::vector<AgentSet> nonempty_subsets() const;

  friend bool operator==(const Agents&, const Agents&) = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace epi
