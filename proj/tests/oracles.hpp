#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the decision procedures it is used to check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "torsorkit/finite_group.hpp"
#include "torsorkit/group_action.hpp"
#include "torsorkit/nerve_cocycles.hpp"

namespace oracle {

using torsorkit::Element;
using torsorkit::FiniteGroup;
using Perm = std::vector<std::size_t>;

/// All permutations of {0..n-1} in lexicographic order, by nested recursion.
inline std::vector<Perm> lex_perms(std::size_t n) {
  std::vector<Perm> out;
  Perm cur;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cur.push_back(v);
      rec();
      cur.pop_back();
      used[v] = false;
    }
  };
  rec();
  return out;
}

/// (a∘b)(i) = a(b(i))
inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline std::size_t perm_index(const std::vector<Perm>& perms, const Perm& p) {
  return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

/// S_3 elements by cycle name, in the library's lexicographic numbering.
struct S3 {
  std::vector<Perm> perms = lex_perms(3);
  std::size_t id = perm_index(perms, {0, 1, 2});
  std::size_t t12 = perm_index(perms, {1, 0, 2});
  std::size_t t13 = perm_index(perms, {2, 1, 0});
  std::size_t t23 = perm_index(perms, {0, 2, 1});
  std::size_t c123 = perm_index(perms, {1, 2, 0});  // 1→2→3→1
  std::size_t c132 = perm_index(perms, {2, 0, 1});
};

inline torsorkit::Table s_n_table(std::size_t n) {
  const auto perms = lex_perms(n);
  torsorkit::Table t(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) t[a][b] = perm_index(perms, compose(perms[a], perms[b]));
  return t;
}

/// ∀x,y ∃! g with g·x = y.
inline bool unique_transport(const torsorkit::GroupAction& a) {
  for (std::size_t x = 0; x < a.set_size(); ++x)
    for (std::size_t y = 0; y < a.set_size(); ++y) {
      std::size_t hits = 0;
      for (Element g = 0; g < a.group().order(); ++g) hits += a.table()[g][x] == y;
      if (hits != 1) return false;
    }
  return true;
}

/// Every subset of the group closed under the product (finite ⇒ subgroup).
inline std::vector<std::vector<Element>> all_subgroups(const FiniteGroup& g) {
  std::vector<std::vector<Element>> out;
  const std::size_t n = g.order();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask >> g.identity() & 1)) continue;
    bool closed = true;
    for (std::size_t a = 0; a < n && closed; ++a)
      for (std::size_t b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1)) closed = mask >> g.multiply(a, b) & 1;
    if (!closed) continue;
    std::vector<Element> members;
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1) members.push_back(a);
    out.push_back(members);
  }
  return out;
}

/// Random action on at most max_points points: a disjoint union of coset
/// actions G/H for random subgroups H, with the points shuffled.
inline torsorkit::Table random_action_table(const FiniteGroup& g, std::size_t max_points, std::mt19937& rng,
                                            std::size_t& points_out) {
  const auto subs = all_subgroups(g);
  std::vector<std::vector<std::size_t>> blocks;  // per block: act on block-local cosets, flattened later
  torsorkit::Table act(g.order());
  std::size_t used = 0;
  do {
    std::vector<const std::vector<Element>*> fits;
    for (const auto& h : subs)
      if (used + g.order() / h.size() <= max_points) fits.push_back(&h);
    if (fits.empty()) break;
    const auto& h = *fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
    // Left cosets of h by brute force.
    std::vector<std::vector<Element>> cosets;
    std::vector<std::size_t> coset_of(g.order(), g.order());
    for (Element a = 0; a < g.order(); ++a) {
      if (coset_of[a] != g.order()) continue;
      std::vector<Element> c;
      for (auto x : h) {
        coset_of[g.multiply(a, x)] = cosets.size();
        c.push_back(g.multiply(a, x));
      }
      cosets.push_back(c);
    }
    for (Element a = 0; a < g.order(); ++a)
      for (std::size_t c = 0; c < cosets.size(); ++c) act[a].push_back(used + coset_of[g.multiply(a, cosets[c][0])]);
    used += cosets.size();
  } while (used < max_points && std::uniform_int_distribution<int>(0, 2)(rng) != 0);
  std::vector<std::size_t> relabel(used);
  std::iota(relabel.begin(), relabel.end(), std::size_t{0});
  std::shuffle(relabel.begin(), relabel.end(), rng);
  torsorkit::Table out(g.order(), std::vector<std::size_t>(used));
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t x = 0; x < used; ++x) out[a][relabel[x]] = relabel[act[a][x]];
  points_out = used;
  return out;
}

/// A regular action with shuffled point labels.
inline torsorkit::Table random_regular_table(const FiniteGroup& g, std::mt19937& rng) {
  std::vector<std::size_t> relabel(g.order());
  std::iota(relabel.begin(), relabel.end(), std::size_t{0});
  std::shuffle(relabel.begin(), relabel.end(), rng);
  torsorkit::Table out(g.order(), std::vector<std::size_t>(g.order()));
  for (Element a = 0; a < g.order(); ++a)
    for (Element x = 0; x < g.order(); ++x) out[a][relabel[x]] = relabel[g.multiply(a, x)];
  return out;
}

/// g_ij for any orientation, from the raw edge values.
inline Element edge_value(const torsorkit::Nerve& nerve, const FiniteGroup& g, const std::vector<Element>& values,
                          std::size_t i, std::size_t j) {
  if (i == j) return g.identity();
  for (std::size_t e = 0; e < nerve.edges().size(); ++e) {
    if (nerve.edges()[e] == torsorkit::Edge{i, j}) return values[e];
    if (nerve.edges()[e] == torsorkit::Edge{j, i}) return g.inverse(values[e]);
  }
  return g.order();
}

inline bool satisfies_triples(const torsorkit::Nerve& nerve, const FiniteGroup& g, const std::vector<Element>& v) {
  for (const auto& t : nerve.triples()) {
    const std::size_t a = t[0], b = t[1], c = t[2];
    if (g.multiply(edge_value(nerve, g, v, a, b), edge_value(nerve, g, v, b, c)) != edge_value(nerve, g, v, a, c))
      return false;
  }
  return true;
}

/// Visits every cochain h ∈ G^n; stops when the visitor returns true.
inline bool any_cochain(std::size_t n, const FiniteGroup& g, const std::function<bool(const std::vector<Element>&)>& f) {
  std::vector<Element> h(n, 0);
  while (true) {
    if (f(h)) return true;
    std::size_t k = n;
    while (k > 0 && ++h[k - 1] == g.order()) h[--k] = 0;
    if (k == 0) return false;
  }
}

/// ∃ h with v2_ij = h_i·v1_ij·h_j^{-1} on every edge.
inline bool equivalent(const torsorkit::Nerve& nerve, const FiniteGroup& g, const std::vector<Element>& v1,
                       const std::vector<Element>& v2) {
  return any_cochain(nerve.num_opens(), g, [&](const std::vector<Element>& h) {
    for (std::size_t e = 0; e < nerve.edges().size(); ++e) {
      const auto [i, j] = nerve.edges()[e];
      if (v2[e] != g.multiply(g.multiply(h[i], v1[e]), g.inverse(h[j]))) return false;
    }
    return true;
  });
}

inline bool trivial(const torsorkit::Nerve& nerve, const FiniteGroup& g, const std::vector<Element>& v) {
  return equivalent(nerve, g, std::vector<Element>(v.size(), g.identity()), v);
}

/// Class sizes of all cocycles, sorted.
inline std::vector<std::size_t> class_sizes(const torsorkit::Nerve& nerve, const FiniteGroup& g) {
  std::vector<std::vector<Element>> cocycles;
  std::vector<Element> v(nerve.edges().size(), 0);
  while (true) {
    if (satisfies_triples(nerve, g, v)) cocycles.push_back(v);
    std::size_t k = v.size();
    while (k > 0 && ++v[k - 1] == g.order()) v[--k] = 0;
    if (k == 0) break;
  }
  std::vector<int> cls(cocycles.size(), -1);
  std::vector<std::size_t> sizes;
  for (std::size_t a = 0; a < cocycles.size(); ++a) {
    if (cls[a] >= 0) continue;
    cls[a] = static_cast<int>(sizes.size());
    std::size_t size = 1;
    for (std::size_t b = a + 1; b < cocycles.size(); ++b)
      if (cls[b] < 0 && equivalent(nerve, g, cocycles[a], cocycles[b])) {
        cls[b] = cls[a];
        ++size;
      }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

/// det mod p by the Leibniz expansion.
inline std::int64_t det_mod(const std::vector<std::vector<std::int64_t>>& m, std::int64_t p) {
  const std::size_t n = m.size();
  std::int64_t total = 0;
  for (const auto& perm : lex_perms(n)) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    std::int64_t term = inversions % 2 ? p - 1 : 1;
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]] % p;
    total = (total + term) % p;
  }
  return total;
}

inline std::size_t count_invertible(std::int64_t p, std::size_t n) {
  std::size_t count = 0, all = 1;
  for (std::size_t i = 0; i < n * n; ++i) all *= static_cast<std::size_t>(p);
  for (std::size_t code = 0; code < all; ++code) {
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    std::size_t rest = code;
    for (std::size_t k = 0; k < n * n; ++k, rest /= static_cast<std::size_t>(p)) m[k / n][k % n] = rest % p;
    count += det_mod(m, p) != 0;
  }
  return count;
}

/// All v ∈ F_p^cols with T·v = w.
inline std::vector<std::vector<std::int64_t>> solutions(std::int64_t p, const std::vector<std::vector<std::int64_t>>& T,
                                                        const std::vector<std::int64_t>& w) {
  const std::size_t cols = T.front().size();
  std::size_t all = 1;
  for (std::size_t i = 0; i < cols; ++i) all *= static_cast<std::size_t>(p);
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t code = 0; code < all; ++code) {
    std::vector<std::int64_t> v(cols);
    std::size_t rest = code;
    for (std::size_t k = cols; k-- > 0; rest /= static_cast<std::size_t>(p)) v[k] = rest % p;
    bool ok = true;
    for (std::size_t r = 0; r < T.size() && ok; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < cols; ++c) acc += T[r][c] * v[c];
      ok = ((acc % p) + p) % p == ((w[r] % p) + p) % p;
    }
    if (ok) out.push_back(v);
  }
  return out;
}

/// Pointwise model of the constant sheaf on a finite space given by minimal
/// opens: a section over U is a function U → G that is constant on
/// U_x ∩ U for every x ∈ U. Transitions are pointwise functions too.
struct PointwiseSpace {
  std::size_t points;
  std::vector<std::uint64_t> minimal;  // minimal open of each point, as a mask
};

inline std::vector<std::size_t> bits(std::uint64_t m) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; m; ++x, m >>= 1)
    if (m & 1) out.push_back(x);
  return out;
}

/// All locally constant functions on U (as maps point → element, size = points, unused = 0).
inline std::vector<std::vector<Element>> locally_constant(const PointwiseSpace& s, std::uint64_t u, std::size_t order) {
  const auto pts = bits(u);
  std::vector<std::vector<Element>> out;
  std::vector<Element> f(s.points, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pts.size()) {
      for (auto x : pts)
        for (auto y : bits(s.minimal[x] & u))
          if (f[x] != f[y]) return;
      out.push_back(f);
      return;
    }
    for (Element g = 0; g < order; ++g) {
      f[pts[k]] = g;
      rec(k + 1);
    }
    f[pts[k]] = 0;
  };
  rec(0);
  return out;
}

/// Number of families (f_i locally constant on U ∩ U_i) with
/// f_i(x) = g_ij(x)·f_j(x) on U ∩ U_i ∩ U_j, enumerated without pruning.
inline std::size_t family_count(const PointwiseSpace& s, const FiniteGroup& g, const std::vector<std::uint64_t>& cover,
                                const std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>>& transition,
                                std::uint64_t u) {
  const std::size_t m = cover.size();
  std::vector<std::vector<std::vector<Element>>> choices;
  for (auto c : cover) choices.push_back(locally_constant(s, u & c, g.order()));
  std::size_t count = 0;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        for (auto x : bits(u & cover[i] & cover[j]))
          ok = ok && choices[i][pick[i]][x] == g.multiply(transition.at({i, j})[x], choices[j][pick[j]][x]);
    count += ok;
    std::size_t k = m;
    while (k > 0 && ++pick[k - 1] == choices[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
  }
  return count;
}

}  // namespace oracle
