#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torsorkit/finite_group.hpp"

namespace torsorkit {

using Edge = std::pair<std::size_t, std::size_t>;            // i < j
using Triple = std::array<std::size_t, 3>;                   // i < j < k

/// Incidence pattern of a cover: which pairs and triples of opens overlap.
class Nerve {
 public:
  std::size_t num_opens() const noexcept { return num_opens_; }
  /// Sorted ascending.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Triple>& triples() const noexcept { return triples_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  /// Position of {i,j} in edges(); nullopt if absent.
  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const;

  friend bool operator==(const Nerve&, const Nerve&) = default;

 private:
  Nerve(std::size_t n, std::vector<Edge> edges, std::vector<Triple> triples)
      : num_opens_(n), edges_(std::move(edges)), triples_(std::move(triples)) {}
  friend Nerve build_nerve(std::size_t, std::vector<Edge>, std::vector<Triple>);

  std::size_t num_opens_;
  std::vector<Edge> edges_;
  std::vector<Triple> triples_;
};

/// Pairs and triples may be given in any order; they are normalised.
/// Errors: MalformedTable (index out of range or self-pair); TripleWithoutEdge {i,j,k}.
Nerve build_nerve(std::size_t num_opens, std::vector<Edge> edges, std::vector<Triple> triples);

/// The cycle nerve on n ≥ 3 opens: edges {i, i+1 mod n}, no triples.
Nerve cycle_nerve(std::size_t n);

/// Per-open group elements h_i.
using Cochain = std::vector<Element>;

/// One group element per edge (i<j); g_ji and g_ii are derived.
class NerveCocycle {
 public:
  const Nerve& nerve() const noexcept { return nerve_; }
  const FiniteGroup& group() const noexcept { return group_; }
  /// Values in edges() order.
  const std::vector<Element>& values() const noexcept { return values_; }
  /// g_ij for any listed edge in either orientation, or e when i == j.
  Element value(std::size_t i, std::size_t j) const;

  friend bool operator==(const NerveCocycle&, const NerveCocycle&) = default;

 private:
  NerveCocycle(Nerve nerve, FiniteGroup group, std::vector<Element> values)
      : nerve_(std::move(nerve)), group_(std::move(group)), values_(std::move(values)) {}
  friend NerveCocycle check_cocycle(const Nerve&, const FiniteGroup&, const std::map<Edge, Element>&);

  Nerve nerve_;
  FiniteGroup group_;
  std::vector<Element> values_;
};

/// Errors: MissingEdgeValue {i,j}; MalformedTable (unknown edge);
/// ElementOutOfRange; TripleViolation {a,b,c} for the first ordering with
/// g_ab·g_bc ≠ g_ac.
NerveCocycle check_cocycle(const Nerve& nerve, const FiniteGroup& group, const std::map<Edge, Element>& assignments);
/// Values listed in edges() order.
NerveCocycle check_cocycle(const Nerve& nerve, const FiniteGroup& group, const std::vector<Element>& values);

NerveCocycle identity_cocycle(const Nerve& nerve, const FiniteGroup& group);

/// g'_ij = h_i·g_ij·h_j^{-1}. Errors: Mismatch (cochain length); ElementOutOfRange.
NerveCocycle apply_coboundary(const NerveCocycle& c, const Cochain& h);

struct TrivializationSearch {
  std::optional<Cochain> cochain;
  /// Edge where propagation failed when no cochain exists.
  std::optional<Edge> violating_edge;
  bool trivial() const noexcept { return cochain.has_value(); }
};
/// Solves g_ij = h_i·h_j^{-1} by breadth-first propagation from the least open
/// of each component with h_root = e.
TrivializationSearch find_trivialization(const NerveCocycle& c);

/// A cochain h with c2 = h·c1·h^{-1} edgewise, or nullopt.
/// Errors: Mismatch (different nerve or group).
std::optional<Cochain> are_equivalent(const NerveCocycle& c1, const NerveCocycle& c2);

/// Ordered product g_{i0 i1}·g_{i1 i2}·… along a closed path (last == first).
/// Errors: NotAPath {i,j}; PathNotClosed.
Element holonomy(const NerveCocycle& c, const std::vector<std::size_t>& path);

struct CocycleClass {
  /// Lexicographically least member.
  std::vector<Element> representative;
  /// Members in lexicographic order.
  std::vector<std::vector<Element>> members;
};

/// Every cocycle on the nerve, partitioned by equivalence; classes ordered by
/// representative. Errors: TooLarge (|G|^|edges| > 4096).
std::vector<CocycleClass> equivalence_classes(const Nerve& nerve, const FiniteGroup& group);

}  // namespace torsorkit
