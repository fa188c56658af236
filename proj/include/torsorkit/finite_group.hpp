#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace torsorkit {

/// Group elements and set points are dense indices.
using Element = std::size_t;
using Table = std::vector<std::vector<std::size_t>>;

/// A finite group given by its Cayley table, cayley[g][h] = g·h.
/// Only obtainable through build_group (or helpers that call it), so every
/// instance satisfies the group axioms.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return cayley_.size(); }
  Element identity() const noexcept { return identity_; }
  Element multiply(Element g, Element h) const { return cayley_[g][h]; }
  Element inverse(Element g) const { return inverse_[g]; }
  const Table& cayley() const noexcept { return cayley_; }
  const std::vector<Element>& inverses() const noexcept { return inverse_; }
  bool is_abelian() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  FiniteGroup(Table cayley, Element identity, std::vector<Element> inverse);
  friend FiniteGroup build_group(std::size_t order, Table cayley);
  friend FiniteGroup opposite_group(const FiniteGroup&);
  friend FiniteGroup direct_power(const FiniteGroup&, std::size_t);

  Table cayley_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
};

/// Validates the group axioms exhaustively. Checks run in the order
/// shape/range, identity, associativity, inverses; the first failure throws.
/// Witnesses: NonAssociative {g,h,k}; NoInverse {g}.
FiniteGroup build_group(std::size_t order, Table cayley);

FiniteGroup cyclic_group(std::size_t n);
/// Permutations of {0..n-1} in lexicographic one-line order; g·h = g∘h
/// (apply h first).
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup klein_four_group();

/// Lexicographically ordered one-line permutations backing symmetric_group(n).
std::vector<std::vector<std::size_t>> permutations_of(std::size_t n);

/// Accepts "cyclic(n)" (1 ≤ n ≤ 12), "symmetric(n)" (1 ≤ n ≤ 4) and "klein_four".
FiniteGroup catalog_group(std::string_view name);

/// Every name catalog_group accepts, in a fixed order.
std::vector<std::string_view> catalog_names();

FiniteGroup opposite_group(const FiniteGroup& group);

/// Direct power G^k with lexicographic tuple indexing (first factor most
/// significant). G^0 is the trivial group.
FiniteGroup direct_power(const FiniteGroup& group, std::size_t k);

class Subgroup {
 public:
  const FiniteGroup& parent() const noexcept { return parent_; }
  /// Sorted, duplicate-free.
  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Element g) const;
  /// Position of g in members(); throws ElementOutOfRange if g is not a member.
  std::size_t position(Element g) const;
  /// The subgroup as a group in its own right, reindexed by position.
  FiniteGroup as_group() const;

 private:
  Subgroup(FiniteGroup parent, std::vector<Element> members);
  friend Subgroup build_subgroup(const FiniteGroup& parent, std::vector<Element> members);

  FiniteGroup parent_;
  std::vector<Element> members_;
};

/// Errors: ElementOutOfRange; MissingIdentity; NotClosed {g,h}; MissingInverse {g}.
Subgroup build_subgroup(const FiniteGroup& parent, std::vector<Element> members);

}  // namespace torsorkit
