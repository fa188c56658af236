#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torsorkit/finite_group.hpp"
#include "torsorkit/group_action.hpp"
#include "torsorkit/nerve_cocycles.hpp"
#include "torsorkit/report.hpp"

namespace torsorkit {

/// Sorted, duplicate-free list of points.
using PointSet = std::vector<std::size_t>;
using OpenIndex = std::size_t;
using SectionIndex = std::size_t;

/// A finite topology stored extensionally. Opens are kept sorted by size and
/// then lexicographically, so ∅ is open 0 and the whole space is the last open.
class FiniteSpace {
 public:
  std::size_t num_points() const noexcept { return num_points_; }
  std::size_t num_opens() const noexcept { return masks_.size(); }
  PointSet open(OpenIndex u) const;
  std::vector<PointSet> opens() const;
  OpenIndex empty() const noexcept { return 0; }
  OpenIndex whole() const noexcept { return masks_.size() - 1; }

  /// V ⊆ U
  bool contains(OpenIndex u, OpenIndex v) const { return (masks_[v] & ~masks_[u]) == 0; }
  OpenIndex meet(OpenIndex u, OpenIndex v) const { return meet_[u][v]; }
  OpenIndex join(OpenIndex u, OpenIndex v) const { return join_[u][v]; }
  /// Smallest open containing x.
  OpenIndex minimal_open(std::size_t x) const;
  std::optional<OpenIndex> find_open(const PointSet& points) const;
  /// Errors: UnknownOpen.
  OpenIndex open_index(const PointSet& points) const;
  std::uint64_t mask(OpenIndex u) const { return masks_[u]; }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.num_points_ == b.num_points_ && a.masks_ == b.masks_;
  }

 private:
  FiniteSpace(std::size_t num_points, std::vector<std::uint64_t> masks);
  friend FiniteSpace build_space(std::size_t, std::vector<PointSet>);

  std::size_t num_points_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<OpenIndex>> meet_;
  std::vector<std::vector<OpenIndex>> join_;
  std::vector<OpenIndex> minimal_;
};

/// Errors: TooLarge (> 64 points or opens); PointOutOfRange; MissingEmpty;
/// MissingWhole; NotClosedUnderUnion {u,v}; NotClosedUnderIntersection {u,v}
/// (indices in the sorted order of the given opens).
FiniteSpace build_space(std::size_t num_points, std::vector<PointSet> opens);

/// The topology generated by the given opens (closing under ∪ and ∩, adding ∅
/// and the whole space).
FiniteSpace generate_space(std::size_t num_points, const std::vector<PointSet>& generators);

FiniteSpace one_point_space();

/// Points {0,1,2,3}: two open points 0, 1 and two closed points 2, 3, with
/// minimal opens {0}, {1}, {0,1,2}, {0,1,3}.
FiniteSpace pseudocircle();

/// Components of `subset` in the subspace topology, ordered by least point.
/// Errors: PointOutOfRange.
std::vector<PointSet> connected_components(const FiniteSpace& space, const PointSet& subset);

using InclusionTables = std::map<std::pair<OpenIndex, OpenIndex>, std::vector<SectionIndex>>;

/// Sections per open plus restriction tables for every inclusion V ⊆ U, keyed
/// (U, V). Only shapes are validated; is_sheaf decides the axioms.
class Presheaf {
 public:
  /// Missing (U, U) tables default to the identity.
  /// Errors: MalformedTable {U} or {U,V}.
  Presheaf(FiniteSpace space, std::vector<std::size_t> counts, InclusionTables restrictions);

  const FiniteSpace& space() const noexcept { return space_; }
  std::size_t count(OpenIndex u) const { return counts_[u]; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  SectionIndex restrict(OpenIndex u, OpenIndex v, SectionIndex s) const;
  const std::vector<SectionIndex>& restriction(OpenIndex u, OpenIndex v) const;
  const InclusionTables& tables() const noexcept { return tables_; }

 private:
  FiniteSpace space_;
  std::vector<std::size_t> counts_;
  InclusionTables tables_;
};

/// Functoriality, then locality and gluing for every cover of every open.
/// Witness axioms: "identity" {U}, "composition" {U,V,W,s}, "locality"
/// {U,s,t,cover...}, "gluing" {U,cover...}.
Report is_sheaf(const Presheaf& presheaf);

class SheafOfSets : public Presheaf {
 private:
  explicit SheafOfSets(Presheaf p) : Presheaf(std::move(p)) {}
  friend SheafOfSets as_sheaf(Presheaf);
};

/// Errors: NotASheaf (witness from the first failing axiom).
SheafOfSets as_sheaf(Presheaf presheaf);

class SheafOfGroups {
 public:
  const SheafOfSets& sets() const noexcept { return sets_; }
  const FiniteSpace& space() const noexcept { return sets_.space(); }
  const FiniteGroup& group(OpenIndex u) const { return groups_[u]; }
  SectionIndex restrict(OpenIndex u, OpenIndex v, SectionIndex s) const { return sets_.restrict(u, v, s); }

 private:
  SheafOfGroups(SheafOfSets sets, std::vector<FiniteGroup> groups)
      : sets_(std::move(sets)), groups_(std::move(groups)) {}
  friend SheafOfGroups build_sheaf_of_groups(SheafOfSets, std::vector<FiniteGroup>);

  SheafOfSets sets_;
  std::vector<FiniteGroup> groups_;
};

/// Errors: MalformedTable {U} (group order ≠ section count);
/// NotHomomorphism {U,V,a,b}.
SheafOfGroups build_sheaf_of_groups(SheafOfSets sets, std::vector<FiniteGroup> groups);

/// 𝒢(U) = locally constant functions U → G, i.e. one value per connected
/// component of U, indexed lexicographically with the component of least point
/// most significant.
SheafOfGroups constant_group_sheaf(const FiniteSpace& space, const FiniteGroup& group);

/// Section index of the locally constant function with the given value on each
/// component of U. Errors: Mismatch; ElementOutOfRange.
SectionIndex constant_section(const FiniteSpace& space, OpenIndex u, const FiniteGroup& group,
                              const std::vector<Element>& component_values);
std::vector<Element> constant_section_values(const FiniteSpace& space, OpenIndex u, const FiniteGroup& group,
                                             SectionIndex s);

/// Per open U, a left action table act[U][g][s] of 𝒢(U) on F(U), compatible
/// with restriction.
class SheafAction {
 public:
  const SheafOfGroups& groups() const noexcept { return groups_; }
  const SheafOfSets& sets() const noexcept { return sets_; }
  const FiniteSpace& space() const noexcept { return sets_.space(); }
  SectionIndex apply(OpenIndex u, Element g, SectionIndex s) const { return act_[u][g][s]; }
  const std::vector<Table>& tables() const noexcept { return act_; }

 private:
  SheafAction(SheafOfGroups groups, SheafOfSets sets, std::vector<Table> act)
      : groups_(std::move(groups)), sets_(std::move(sets)), act_(std::move(act)) {}
  friend SheafAction build_sheaf_action(SheafOfGroups, SheafOfSets, std::vector<Table>);

  SheafOfGroups groups_;
  SheafOfSets sets_;
  std::vector<Table> act_;
};

/// Errors: Mismatch (different spaces); MalformedTable {U};
/// IdentityAxiomViolated {U,s}; CompatibilityViolated {U,g,h,s} or, for
/// restriction, {U,V,g,s}.
SheafAction build_sheaf_action(SheafOfGroups groups, SheafOfSets sets, std::vector<Table> act);

/// Local nonemptiness and local unique transitivity, decided on minimal open
/// neighbourhoods. Witness axioms: "locally-nonempty" {x, U_x};
/// "local-unique-transport" {U, s, t, U_x, number of transporting elements}.
Report is_sheaf_torsor(const SheafAction& action);

class SheafTorsor {
 public:
  const SheafAction& action() const noexcept { return action_; }
  const FiniteSpace& space() const noexcept { return action_.space(); }

 private:
  explicit SheafTorsor(SheafAction a) : action_(std::move(a)) {}
  friend SheafTorsor as_sheaf_torsor(SheafAction);

  SheafAction action_;
};

/// Errors: NotASheafTorsor.
SheafTorsor as_sheaf_torsor(SheafAction action);

/// Errors: UnknownOpen.
std::vector<SectionIndex> sections(const SheafTorsor& torsor, OpenIndex u);
std::vector<SectionIndex> global_sections(const SheafTorsor& torsor);

/// Cover of X by opens with transition sections g_ij ∈ 𝒢(U_i ∩ U_j) for i < j
/// (cover positions); g_ii = e and g_ji = g_ij^{-1} are derived.
class DescentDatum {
 public:
  const SheafOfGroups& groups() const noexcept { return groups_; }
  const FiniteSpace& space() const noexcept { return groups_.space(); }
  const std::vector<OpenIndex>& cover() const noexcept { return cover_; }
  OpenIndex overlap(std::size_t i, std::size_t j) const { return space().meet(cover_[i], cover_[j]); }
  /// Section of 𝒢(U_i ∩ U_j).
  SectionIndex transition(std::size_t i, std::size_t j) const;
  const std::map<Edge, SectionIndex>& stored() const noexcept { return stored_; }

 private:
  DescentDatum(SheafOfGroups groups, std::vector<OpenIndex> cover, std::map<Edge, SectionIndex> stored)
      : groups_(std::move(groups)), cover_(std::move(cover)), stored_(std::move(stored)) {}
  friend DescentDatum build_descent_datum(SheafOfGroups, std::vector<OpenIndex>, std::map<Edge, SectionIndex>);

  SheafOfGroups groups_;
  std::vector<OpenIndex> cover_;
  std::map<Edge, SectionIndex> stored_;
};

/// Pairs whose overlap group is trivial may be omitted.
/// Errors: UnknownOpen; CoverIncomplete; MissingEdgeValue {i,j};
/// ElementOutOfRange {i,j}; TripleViolation {i,j,k}.
DescentDatum build_descent_datum(SheafOfGroups groups, std::vector<OpenIndex> cover,
                                 std::map<Edge, SectionIndex> transition);

/// Compatible families (s_i ∈ 𝒢(U ∩ U_i))_i with s_i = g_ij·s_j on triple
/// overlaps, in lexicographic order. Family k is section k of the glued torsor.
std::vector<std::vector<SectionIndex>> descent_families(const DescentDatum& datum, OpenIndex u);

/// Sheaf of compatible families, with a ∈ 𝒢(U) acting by (s_i) ↦ (s_i·a|^{-1}).
SheafTorsor glue_from_cocycle(const DescentDatum& datum);

/// g_ij ∈ 𝒢(U_i ∩ U_j) with g_ij·s_j = s_i, for chosen s_i ∈ F(U_i).
/// Errors: UnknownOpen; Mismatch (chosen length); NoLocalSection {i};
/// ElementOutOfRange {i}.
DescentDatum extract_cocycle(const SheafTorsor& torsor, const std::vector<OpenIndex>& cover,
                             const std::vector<SectionIndex>& chosen);

/// g'_ij = h_i|·g_ij·h_j|^{-1} with h_i ∈ 𝒢(U_i). Errors: Mismatch; ElementOutOfRange.
DescentDatum apply_descent_coboundary(const DescentDatum& datum, const std::vector<SectionIndex>& h);

/// Exhaustive search for h with d2 = h·d1·h^{-1}. Errors: Mismatch.
std::optional<std::vector<SectionIndex>> find_descent_equivalence(const DescentDatum& d1, const DescentDatum& d2);

/// An action of an ordinary group on a set, seen as a sheaf action on the
/// one-point space (F(∅) and 𝒢(∅) are singletons).
SheafAction lift_point_action(const GroupAction& action);
SheafTorsor lift_point_torsor(const Torsor& torsor);

}  // namespace torsorkit
