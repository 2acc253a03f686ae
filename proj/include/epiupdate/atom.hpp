#pragma once

#include <compare>
#include <string>
#include <vector>

namespace epi {

/// Base atoms are declared by the user; history atoms record an agent's view of past rounds.
enum class AtomKind : unsigned char { base = 0, history = 1 };

/// A local variable `p_a`: a name owned by exactly one agent.
struct Atom {
  AtomKind kind = AtomKind::base;
  std::string name;
  std::string owner;

  static Atom base(std::string name, std::string owner) {
    return Atom{AtomKind::base, std::move(name), std::move(owner)};
  }
  static Atom history(std::string view, std::string owner) {
    return Atom{AtomKind::history, std::move(view), std::move(owner)};
  }

  bool is_history() const { return kind == AtomKind::history; }

  /// Owner-major order so that an agent's atoms are contiguous in sorted vocabularies.
  friend std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
    if (auto c = x.kind <=> y.kind; c != 0) return c;
    if (auto c = x.owner <=> y.owner; c != 0) return c;
    return x.name <=> y.name;
  }
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// `p_a`, or `(view)_a` for compound history views.
std::string to_string(const Atom& atom);

/// Sorted, duplicate-free copy.
std::vector<Atom> normalized(std::vector<Atom> atoms);

}  // namespace epi
