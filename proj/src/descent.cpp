#include <algorithm>
#include <functional>
#include <string>

#include "torsorkit/error.hpp"
#include "torsorkit/finite_space_sheaves.hpp"

namespace torsorkit {

namespace {

std::string pos_pair(std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// a·b in 𝒢(w) after restricting a from 𝒢(ua) and b from 𝒢(ub).
SectionIndex restricted_product(const SheafOfGroups& g, OpenIndex ua, SectionIndex a, OpenIndex ub, SectionIndex b,
                                OpenIndex w) {
  return g.group(w).multiply(g.restrict(ua, w, a), g.restrict(ub, w, b));
}

}  // namespace

SectionIndex DescentDatum::transition(std::size_t i, std::size_t j) const {
  if (i >= cover_.size() || j >= cover_.size()) throw Error(ErrorKind::UnknownOpen, {i, j}, "cover position out of range");
  if (i == j) return groups_.group(cover_[i]).identity();
  if (i < j) return stored_.at({i, j});
  return groups_.group(overlap(i, j)).inverse(stored_.at({j, i}));
}

DescentDatum build_descent_datum(SheafOfGroups groups, std::vector<OpenIndex> cover,
                                 std::map<Edge, SectionIndex> transition) {
  const auto& space = groups.space();
  std::uint64_t covered = 0;
  for (auto u : cover) {
    if (u >= space.num_opens()) throw Error(ErrorKind::UnknownOpen, {u}, "cover member is not an open index");
    covered |= space.mask(u);
  }
  if (covered != space.mask(space.whole())) throw Error(ErrorKind::CoverIncomplete, {}, "cover does not exhaust the space");

  const std::size_t m = cover.size();
  for (const auto& [key, s] : transition) {
    if (key.first >= key.second || key.second >= m) {
      throw Error(ErrorKind::MalformedTable, {key.first, key.second}, "transition key " + pos_pair(key.first, key.second) + " must satisfy i < j < cover size");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto w = space.meet(cover[i], cover[j]);
      auto it = transition.find({i, j});
      if (it == transition.end()) {
        if (groups.group(w).order() != 1) throw Error(ErrorKind::MissingEdgeValue, {i, j}, "no transition for " + pos_pair(i, j));
        transition[{i, j}] = 0;
      } else if (it->second >= groups.group(w).order()) {
        throw Error(ErrorKind::ElementOutOfRange, {i, j}, "transition section out of range");
      }
    }
  }
  DescentDatum datum(std::move(groups), std::move(cover), std::move(transition));
  const auto& g = datum.groups();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        const auto t = datum.space().meet(datum.overlap(i, j), datum.cover()[k]);
        const auto lhs = restricted_product(g, datum.overlap(i, j), datum.transition(i, j), datum.overlap(j, k),
                                            datum.transition(j, k), t);
        if (lhs != g.restrict(datum.overlap(i, k), t, datum.transition(i, k))) {
          std::array<std::size_t, 3> w{i, j, k};
          std::sort(w.begin(), w.end());
          throw Error(ErrorKind::TripleViolation, {w[0], w[1], w[2]},
                      "g_ij·g_jk ≠ g_ik for " + pos_pair(i, j) + "," + std::to_string(k));
        }
      }
  return datum;
}

std::vector<std::vector<SectionIndex>> descent_families(const DescentDatum& datum, OpenIndex u) {
  const auto& space = datum.space();
  const auto& g = datum.groups();
  if (u >= space.num_opens()) throw Error(ErrorKind::UnknownOpen, {u}, "open index out of range");
  const std::size_t m = datum.cover().size();
  std::vector<OpenIndex> local(m);
  for (std::size_t i = 0; i < m; ++i) local[i] = space.meet(u, datum.cover()[i]);

  std::vector<std::vector<SectionIndex>> out;
  std::vector<SectionIndex> family;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == m) {
      out.push_back(family);
      return;
    }
    for (SectionIndex s = 0; s < g.group(local[i]).order(); ++s) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        // s_j = g_ji·s_i on U ∩ U_j ∩ U_i
        const auto w = space.meet(local[j], local[i]);
        ok = g.restrict(local[j], w, family[j]) ==
             restricted_product(g, datum.overlap(j, i), datum.transition(j, i), local[i], s, w);
      }
      if (!ok) continue;
      family.push_back(s);
      walk(i + 1);
      family.pop_back();
    }
  };
  walk(0);
  return out;
}

SheafTorsor glue_from_cocycle(const DescentDatum& datum) {
  const auto& space = datum.space();
  const auto& g = datum.groups();
  const std::size_t n = space.num_opens();
  const std::size_t m = datum.cover().size();

  std::vector<std::vector<std::vector<SectionIndex>>> families(n);
  std::vector<std::map<std::vector<SectionIndex>, SectionIndex>> lookup(n);
  std::vector<std::size_t> counts(n);
  for (OpenIndex u = 0; u < n; ++u) {
    families[u] = descent_families(datum, u);
    counts[u] = families[u].size();
    for (SectionIndex s = 0; s < families[u].size(); ++s) lookup[u][families[u][s]] = s;
  }
  auto local = [&](OpenIndex u, std::size_t i) { return space.meet(u, datum.cover()[i]); };

  InclusionTables tables;
  for (OpenIndex u = 0; u < n; ++u)
    for (OpenIndex v = 0; v < n; ++v) {
      if (!space.contains(u, v)) continue;
      std::vector<SectionIndex> table;
      for (const auto& fam : families[u]) {
        std::vector<SectionIndex> r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = g.restrict(local(u, i), local(v, i), fam[i]);
        table.push_back(lookup[v].at(r));
      }
      tables[{u, v}] = std::move(table);
    }

  std::vector<Table> act(n);
  for (OpenIndex u = 0; u < n; ++u) {
    const auto& G = g.group(u);
    act[u].assign(G.order(), std::vector<SectionIndex>(counts[u]));
    for (Element a = 0; a < G.order(); ++a)
      for (SectionIndex s = 0; s < counts[u]; ++s) {
        std::vector<SectionIndex> moved(m);
        for (std::size_t i = 0; i < m; ++i) {
          const auto w = local(u, i);
          const auto& Gw = g.group(w);
          moved[i] = Gw.multiply(families[u][s][i], Gw.inverse(g.restrict(u, w, a)));
        }
        act[u][a][s] = lookup[u].at(moved);
      }
  }
  auto sets = as_sheaf(Presheaf(space, std::move(counts), std::move(tables)));
  return as_sheaf_torsor(build_sheaf_action(g, std::move(sets), std::move(act)));
}

DescentDatum extract_cocycle(const SheafTorsor& torsor, const std::vector<OpenIndex>& cover,
                             const std::vector<SectionIndex>& chosen) {
  const auto& action = torsor.action();
  const auto& space = torsor.space();
  const auto& sets = action.sets();
  if (chosen.size() != cover.size()) throw Error(ErrorKind::Mismatch, {chosen.size(), cover.size()}, "need one section per cover open");
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover[i] >= space.num_opens()) throw Error(ErrorKind::UnknownOpen, {cover[i]}, "cover member is not an open index");
    if (sets.count(cover[i]) == 0) throw Error(ErrorKind::NoLocalSection, {i}, "F(U_" + std::to_string(i) + ") is empty");
    if (chosen[i] >= sets.count(cover[i])) throw Error(ErrorKind::ElementOutOfRange, {i}, "chosen section out of range");
  }
  std::map<Edge, SectionIndex> transition;
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = i + 1; j < cover.size(); ++j) {
      const auto w = space.meet(cover[i], cover[j]);
      const auto si = sets.restrict(cover[i], w, chosen[i]);
      const auto sj = sets.restrict(cover[j], w, chosen[j]);
      std::optional<SectionIndex> found;
      for (Element a = 0; a < action.groups().group(w).order(); ++a) {
        if (action.apply(w, a, sj) != si) continue;
        if (found) throw std::logic_error("sheaf torsor with two transporters on an overlap");
        found = a;
      }
      if (!found) throw std::logic_error("sheaf torsor without a transporter on an overlap");
      transition[{i, j}] = *found;
    }
  return build_descent_datum(action.groups(), cover, std::move(transition));
}

DescentDatum apply_descent_coboundary(const DescentDatum& datum, const std::vector<SectionIndex>& h) {
  const auto& g = datum.groups();
  const std::size_t m = datum.cover().size();
  if (h.size() != m) throw Error(ErrorKind::Mismatch, {h.size(), m}, "need one section per cover open");
  for (std::size_t i = 0; i < m; ++i)
    if (h[i] >= g.group(datum.cover()[i]).order()) throw Error(ErrorKind::ElementOutOfRange, {i}, "cochain section out of range");
  std::map<Edge, SectionIndex> out;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto w = datum.overlap(i, j);
      const auto& G = g.group(w);
      const auto hi = g.restrict(datum.cover()[i], w, h[i]);
      const auto hj = g.restrict(datum.cover()[j], w, h[j]);
      out[{i, j}] = G.multiply(G.multiply(hi, datum.transition(i, j)), G.inverse(hj));
    }
  return build_descent_datum(g, datum.cover(), std::move(out));
}

std::optional<std::vector<SectionIndex>> find_descent_equivalence(const DescentDatum& d1, const DescentDatum& d2) {
  if (!(d1.space() == d2.space()) || d1.cover() != d2.cover() ||
      d1.groups().sets().counts() != d2.groups().sets().counts()) {
    throw Error(ErrorKind::Mismatch, {}, "descent data over different covers or sheaves");
  }
  const auto& g = d1.groups();
  const std::size_t m = d1.cover().size();
  std::vector<SectionIndex> h;
  std::function<bool(std::size_t)> walk = [&](std::size_t i) {
    if (i == m) return true;
    for (SectionIndex x = 0; x < g.group(d1.cover()[i]).order(); ++x) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const auto w = d1.overlap(j, i);
        const auto& G = g.group(w);
        const auto hj = g.restrict(d1.cover()[j], w, h[j]);
        const auto hi = g.restrict(d1.cover()[i], w, x);
        ok = d2.transition(j, i) == G.multiply(G.multiply(hj, d1.transition(j, i)), G.inverse(hi));
      }
      if (!ok) continue;
      h.push_back(x);
      if (walk(i + 1)) return true;
      h.pop_back();
    }
    return false;
  };
  if (!walk(0)) return std::nullopt;
  return h;
}

}  // namespace torsorkit
