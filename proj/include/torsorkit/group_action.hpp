#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torsorkit/finite_group.hpp"

namespace torsorkit {

using Point = std::size_t;

/// A left action, act[g][x] = g·x. Only obtainable through build_action (or
/// right_action_as_left), so the identity and compatibility axioms hold.
class GroupAction {
 public:
  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t set_size() const noexcept { return set_size_; }
  Point apply(Element g, Point x) const { return act_[g][x]; }
  const Table& table() const noexcept { return act_; }

 private:
  GroupAction(FiniteGroup group, std::size_t set_size, Table act);
  friend GroupAction build_action(const FiniteGroup&, std::size_t, Table);

  FiniteGroup group_;
  std::size_t set_size_ = 0;
  Table act_;
};

/// Errors: EmptySet (set_size 0); MalformedTable; IdentityAxiomViolated {x};
/// CompatibilityViolated {g,h,x}.
GroupAction build_action(const FiniteGroup& group, std::size_t set_size, Table act);

/// Sorted ascending.
std::vector<Point> orbit(const GroupAction& action, Point x);
std::vector<Element> stabilizer(const GroupAction& action, Point x);

struct FreenessResult {
  bool free = true;
  /// (g, x) with g ≠ e and g·x = x: the first point with a nontrivial
  /// stabilizer, and the least such g for it.
  std::optional<std::pair<Element, Point>> witness;
};
FreenessResult is_free(const GroupAction& action);

struct TransitivityResult {
  bool transitive = true;
  /// Two points in different orbits: 0 and the least point not in orbit(0).
  std::optional<std::pair<Point, Point>> witness;
};
TransitivityResult is_transitive(const GroupAction& action);

class Torsor {
 public:
  const GroupAction& action() const noexcept { return action_; }
  const FiniteGroup& group() const noexcept { return action_.group(); }
  std::size_t size() const noexcept { return action_.set_size(); }

 private:
  explicit Torsor(GroupAction action) : action_(std::move(action)) {}
  friend Torsor as_torsor(const GroupAction&);

  GroupAction action_;
};

/// Errors: EmptySet; NotFree {g,x}; NotTransitive {x,y}.
Torsor as_torsor(const GroupAction& action);

/// The unique g with g·x = y, by exhaustive search.
Element transporter(const Torsor& torsor, Point x, Point y);

class Trivialization {
 public:
  Point basepoint() const noexcept { return basepoint_; }
  /// φ_{x0}: g ↦ g·x0
  Point to_point(Element g) const { return to_points_[g]; }
  /// d_{x0}: y ↦ tr(x0, y)
  Element to_element(Point y) const { return to_group_[y]; }
  const std::vector<Point>& to_points() const noexcept { return to_points_; }
  const std::vector<Element>& to_group() const noexcept { return to_group_; }

 private:
  Trivialization(Point basepoint, std::vector<Point> to_points, std::vector<Element> to_group)
      : basepoint_(basepoint), to_points_(std::move(to_points)), to_group_(std::move(to_group)) {}
  friend Trivialization trivialization(const Torsor&, Point);

  Point basepoint_;
  std::vector<Point> to_points_;
  std::vector<Element> to_group_;
};

Trivialization trivialization(const Torsor& torsor, Point x0);

struct BasepointChange {
  Element h;
  /// Number of g for which φ_{x1}(g) = φ_{x0}(g·h) was confirmed.
  std::size_t checked = 0;
  std::optional<Element> first_mismatch;
  bool verified() const noexcept { return !first_mismatch.has_value(); }
};
BasepointChange basepoint_change(const Torsor& torsor, Point x0, Point x1);

/// The group law carried over to the point set by φ_{x0}; its identity is x0.
FiniteGroup transported_group(const Torsor& torsor, Point x0);

/// right_table[x][g] = x·g. Returns the left action of opposite_group(group)
/// with act[g][x] = x·g.
/// Errors: MalformedTable; RightIdentityViolated {x}; RightCompatibilityViolated {x,g,h}.
GroupAction right_action_as_left(const FiniteGroup& group, std::size_t set_size, const Table& right_table);

/// Left-multiplication action of G on its left cosets gH, with cosets ordered
/// by least element (so the coset H itself is point 0).
GroupAction coset_action(const Subgroup& subgroup);

/// Left multiplication of G on itself.
GroupAction regular_action(const FiniteGroup& group);

}  // namespace torsorkit
