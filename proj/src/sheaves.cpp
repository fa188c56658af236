#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "torsorkit/error.hpp"
#include "torsorkit/finite_space_sheaves.hpp"

namespace torsorkit {

namespace {

std::string pair_str(OpenIndex u, OpenIndex v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

// Covers of U by opens that form an antichain. A member contained in another
// member does not change the matching families, so these suffice.
std::vector<std::vector<OpenIndex>> antichain_covers(const FiniteSpace& space, OpenIndex u) {
  if (u == space.empty()) return {{}};
  std::vector<OpenIndex> cands;
  for (OpenIndex v = 1; v < space.num_opens(); ++v)
    if (space.contains(u, v)) cands.push_back(v);
  std::vector<std::uint64_t> suffix(cands.size() + 1, 0);
  for (std::size_t k = cands.size(); k-- > 0;) suffix[k] = suffix[k + 1] | space.mask(cands[k]);

  const auto target = space.mask(u);
  std::vector<std::vector<OpenIndex>> out;
  std::vector<OpenIndex> chosen;
  std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t k, std::uint64_t covered) {
    if ((covered | suffix[k]) != target) return;
    if (k == cands.size()) {
      out.push_back(chosen);
      return;
    }
    const auto v = cands[k];
    bool comparable = false;
    for (auto w : chosen) comparable = comparable || space.contains(v, w) || space.contains(w, v);
    if (!comparable) {
      chosen.push_back(v);
      walk(k + 1, covered | space.mask(v));
      chosen.pop_back();
    }
    walk(k + 1, covered);
  };
  walk(0, 0);
  return out;
}

// Families (s_k ∈ F(V_k)) agreeing on pairwise overlaps.
std::set<std::vector<SectionIndex>> matching_families(const Presheaf& f, const std::vector<OpenIndex>& cover) {
  const auto& space = f.space();
  std::set<std::vector<SectionIndex>> out;
  std::vector<SectionIndex> family;
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == cover.size()) {
      out.insert(family);
      return;
    }
    for (SectionIndex s = 0; s < f.count(cover[k]); ++s) {
      bool ok = true;
      for (std::size_t l = 0; l < k && ok; ++l) {
        const auto w = space.meet(cover[k], cover[l]);
        ok = f.restrict(cover[k], w, s) == f.restrict(cover[l], w, family[l]);
      }
      if (!ok) continue;
      family.push_back(s);
      walk(k + 1);
      family.pop_back();
    }
  };
  walk(0);
  return out;
}

}  // namespace

Presheaf::Presheaf(FiniteSpace space, std::vector<std::size_t> counts, InclusionTables restrictions)
    : space_(std::move(space)), counts_(std::move(counts)) {
  const std::size_t n = space_.num_opens();
  if (counts_.size() != n) throw Error(ErrorKind::MalformedTable, {counts_.size()}, "need one section count per open");
  for (const auto& [key, table] : restrictions) {
    const auto [u, v] = key;
    if (u >= n || v >= n || !space_.contains(u, v)) {
      throw Error(ErrorKind::MalformedTable, {u, v}, pair_str(u, v) + " is not an inclusion V ⊆ U");
    }
  }
  for (OpenIndex u = 0; u < n; ++u) {
    for (OpenIndex v = 0; v < n; ++v) {
      if (!space_.contains(u, v)) continue;
      auto it = restrictions.find({u, v});
      std::vector<SectionIndex> table;
      if (it != restrictions.end()) {
        table = it->second;
      } else if (u == v) {
        table.resize(counts_[u]);
        std::iota(table.begin(), table.end(), SectionIndex{0});
      } else {
        throw Error(ErrorKind::MalformedTable, {u, v}, "missing restriction table " + pair_str(u, v));
      }
      if (table.size() != counts_[u]) throw Error(ErrorKind::MalformedTable, {u, v}, "restriction table has wrong length");
      for (auto s : table)
        if (s >= counts_[v]) throw Error(ErrorKind::MalformedTable, {u, v}, "restriction maps outside F(V)");
      tables_[{u, v}] = std::move(table);
    }
  }
}

SectionIndex Presheaf::restrict(OpenIndex u, OpenIndex v, SectionIndex s) const { return tables_.at({u, v})[s]; }

const std::vector<SectionIndex>& Presheaf::restriction(OpenIndex u, OpenIndex v) const {
  auto it = tables_.find({u, v});
  if (it == tables_.end()) throw Error(ErrorKind::MalformedTable, {u, v}, pair_str(u, v) + " is not an inclusion");
  return it->second;
}

Report is_sheaf(const Presheaf& f) {
  const auto& space = f.space();
  const std::size_t n = space.num_opens();
  std::vector<Witness> found;

  for (OpenIndex u = 0; u < n; ++u) {
    const auto& id = f.restriction(u, u);
    for (SectionIndex s = 0; s < id.size(); ++s) {
      if (id[s] != s) {
        found.push_back({"identity", {u}});
        break;
      }
    }
  }
  for (OpenIndex u = 0; u < n; ++u)
    for (OpenIndex v = 0; v < n; ++v) {
      if (!space.contains(u, v)) continue;
      for (OpenIndex w = 0; w < n; ++w) {
        if (!space.contains(v, w)) continue;
        for (SectionIndex s = 0; s < f.count(u); ++s) {
          if (f.restrict(v, w, f.restrict(u, v, s)) != f.restrict(u, w, s)) {
            found.push_back({"composition", {u, v, w, s}});
            break;
          }
        }
      }
    }

  for (OpenIndex u = 0; u < n; ++u) {
    bool locality_reported = false, gluing_reported = false;
    for (const auto& cover : antichain_covers(space, u)) {
      const auto families = matching_families(f, cover);
      std::map<std::vector<SectionIndex>, SectionIndex> image;
      for (SectionIndex s = 0; s < f.count(u); ++s) {
        std::vector<SectionIndex> fam;
        for (auto v : cover) fam.push_back(f.restrict(u, v, s));
        auto [it, inserted] = image.emplace(fam, s);
        if (!inserted && !locality_reported) {
          std::vector<std::size_t> idx{u, it->second, s};
          idx.insert(idx.end(), cover.begin(), cover.end());
          found.push_back({"locality", std::move(idx)});
          locality_reported = true;
        }
      }
      if (gluing_reported) continue;
      for (const auto& fam : families) {
        if (!image.contains(fam)) {
          std::vector<std::size_t> idx{u};
          idx.insert(idx.end(), cover.begin(), cover.end());
          found.push_back({"gluing", std::move(idx)});
          gluing_reported = true;
          break;
        }
      }
    }
  }

  auto report = found.empty() ? Report::passed("sheaf") : Report::failed("sheaf", std::move(found));
  std::vector<std::int64_t> counts(f.counts().begin(), f.counts().end());
  report.with_count("opens", static_cast<std::int64_t>(n)).with_count("sections", counts);
  return report;
}

SheafOfSets as_sheaf(Presheaf presheaf) {
  const auto report = is_sheaf(presheaf);
  if (!report.pass()) {
    const auto& w = report.witnesses().front();
    throw Error(ErrorKind::NotASheaf, w.indices, w.axiom + " axiom fails");
  }
  return SheafOfSets(std::move(presheaf));
}

SheafOfGroups build_sheaf_of_groups(SheafOfSets sets, std::vector<FiniteGroup> groups) {
  const auto& space = sets.space();
  if (groups.size() != space.num_opens()) throw Error(ErrorKind::MalformedTable, {groups.size()}, "need one group per open");
  for (OpenIndex u = 0; u < groups.size(); ++u) {
    if (groups[u].order() != sets.count(u)) throw Error(ErrorKind::MalformedTable, {u}, "group order ≠ section count");
  }
  for (const auto& [key, table] : sets.tables()) {
    const auto [u, v] = key;
    for (Element a = 0; a < groups[u].order(); ++a)
      for (Element b = 0; b < groups[u].order(); ++b)
        if (table[groups[u].multiply(a, b)] != groups[v].multiply(table[a], table[b]))
          throw Error(ErrorKind::NotHomomorphism, {u, v, a, b}, "restriction " + pair_str(u, v) + " is not a homomorphism");
  }
  return SheafOfGroups(std::move(sets), std::move(groups));
}

namespace {

struct ComponentLayout {
  std::vector<std::vector<PointSet>> comps;  // per open
};

ComponentLayout layout_of(const FiniteSpace& space) {
  ComponentLayout out;
  for (OpenIndex u = 0; u < space.num_opens(); ++u) out.comps.push_back(connected_components(space, space.open(u)));
  return out;
}

std::vector<Element> decode_digits(std::size_t code, std::size_t base, std::size_t k) {
  std::vector<Element> d(k);
  for (std::size_t i = k; i-- > 0; code /= base) d[i] = code % base;
  return d;
}

std::size_t encode_digits(const std::vector<Element>& d, std::size_t base) {
  std::size_t code = 0;
  for (auto x : d) code = code * base + x;
  return code;
}

}  // namespace

SheafOfGroups constant_group_sheaf(const FiniteSpace& space, const FiniteGroup& group) {
  const auto layout = layout_of(space);
  const std::size_t n = space.num_opens();
  std::vector<FiniteGroup> groups;
  std::vector<std::size_t> counts;
  for (OpenIndex u = 0; u < n; ++u) {
    groups.push_back(direct_power(group, layout.comps[u].size()));
    counts.push_back(groups.back().order());
  }
  InclusionTables tables;
  for (OpenIndex u = 0; u < n; ++u) {
    for (OpenIndex v = 0; v < n; ++v) {
      if (!space.contains(u, v)) continue;
      // Component of V ↦ the component of U containing it.
      std::vector<std::size_t> parent;
      for (const auto& c : layout.comps[v]) {
        std::size_t k = 0;
        while (!std::binary_search(layout.comps[u][k].begin(), layout.comps[u][k].end(), c.front())) ++k;
        parent.push_back(k);
      }
      std::vector<SectionIndex> table(counts[u]);
      for (SectionIndex s = 0; s < counts[u]; ++s) {
        const auto du = decode_digits(s, group.order(), layout.comps[u].size());
        std::vector<Element> dv;
        for (auto k : parent) dv.push_back(du[k]);
        table[s] = encode_digits(dv, group.order());
      }
      tables[{u, v}] = std::move(table);
    }
  }
  return build_sheaf_of_groups(as_sheaf(Presheaf(space, std::move(counts), std::move(tables))), std::move(groups));
}

SectionIndex constant_section(const FiniteSpace& space, OpenIndex u, const FiniteGroup& group,
                              const std::vector<Element>& component_values) {
  if (u >= space.num_opens()) throw Error(ErrorKind::UnknownOpen, {u}, "open index out of range");
  const auto comps = connected_components(space, space.open(u));
  if (comps.size() != component_values.size()) throw Error(ErrorKind::Mismatch, {u}, "need one value per component");
  for (auto g : component_values)
    if (g >= group.order()) throw Error(ErrorKind::ElementOutOfRange, {g}, "value out of range");
  return encode_digits(component_values, group.order());
}

std::vector<Element> constant_section_values(const FiniteSpace& space, OpenIndex u, const FiniteGroup& group,
                                             SectionIndex s) {
  if (u >= space.num_opens()) throw Error(ErrorKind::UnknownOpen, {u}, "open index out of range");
  const auto k = connected_components(space, space.open(u)).size();
  return decode_digits(s, group.order(), k);
}

SheafAction build_sheaf_action(SheafOfGroups groups, SheafOfSets sets, std::vector<Table> act) {
  const auto& space = sets.space();
  if (!(groups.space() == space)) throw Error(ErrorKind::Mismatch, {}, "group sheaf and set sheaf live on different spaces");
  const std::size_t n = space.num_opens();
  if (act.size() != n) throw Error(ErrorKind::MalformedTable, {act.size()}, "need one action table per open");
  for (OpenIndex u = 0; u < n; ++u) {
    const auto& G = groups.group(u);
    if (act[u].size() != G.order()) throw Error(ErrorKind::MalformedTable, {u}, "action table needs one row per element");
    for (const auto& row : act[u]) {
      if (row.size() != sets.count(u)) throw Error(ErrorKind::MalformedTable, {u}, "action row has wrong length");
      for (auto s : row)
        if (s >= sets.count(u)) throw Error(ErrorKind::MalformedTable, {u}, "action entry out of range");
    }
    for (SectionIndex s = 0; s < sets.count(u); ++s)
      if (act[u][G.identity()][s] != s) throw Error(ErrorKind::IdentityAxiomViolated, {u, s}, "e·s ≠ s");
    for (Element g = 0; g < G.order(); ++g)
      for (Element h = 0; h < G.order(); ++h)
        for (SectionIndex s = 0; s < sets.count(u); ++s)
          if (act[u][G.multiply(g, h)][s] != act[u][g][act[u][h][s]])
            throw Error(ErrorKind::CompatibilityViolated, {u, g, h, s}, "(gh)·s ≠ g·(h·s)");
  }
  for (const auto& [key, table] : sets.tables()) {
    const auto [u, v] = key;
    for (Element g = 0; g < groups.group(u).order(); ++g)
      for (SectionIndex s = 0; s < sets.count(u); ++s)
        if (table[act[u][g][s]] != act[v][groups.restrict(u, v, g)][table[s]])
          throw Error(ErrorKind::CompatibilityViolated, {u, v, g, s}, "action does not commute with restriction " + pair_str(u, v));
  }
  return SheafAction(std::move(groups), std::move(sets), std::move(act));
}

Report is_sheaf_torsor(const SheafAction& action) {
  const auto& space = action.space();
  const auto& sets = action.sets();
  std::vector<Witness> found;
  for (std::size_t x = 0; x < space.num_points(); ++x) {
    const auto ux = space.minimal_open(x);
    if (sets.count(ux) == 0) found.push_back({"locally-nonempty", {x, ux}});
  }
  for (OpenIndex u = 0; u < space.num_opens(); ++u) {
    std::vector<OpenIndex> minimal;
    for (std::size_t x = 0; x < space.num_points(); ++x) {
      if (space.mask(u) >> x & 1) minimal.push_back(space.minimal_open(x));
    }
    std::sort(minimal.begin(), minimal.end());
    minimal.erase(std::unique(minimal.begin(), minimal.end()), minimal.end());
    bool reported = false;
    for (SectionIndex s = 0; s < sets.count(u) && !reported; ++s) {
      for (SectionIndex t = 0; t < sets.count(u) && !reported; ++t) {
        for (auto v : minimal) {
          const auto sv = sets.restrict(u, v, s), tv = sets.restrict(u, v, t);
          std::size_t hits = 0;
          for (Element g = 0; g < action.groups().group(v).order(); ++g) hits += action.apply(v, g, sv) == tv;
          if (hits != 1) {
            found.push_back({"local-unique-transport", {u, s, t, v, hits}});
            reported = true;
            break;
          }
        }
      }
    }
  }
  auto report = found.empty() ? Report::passed("sheaf-torsor") : Report::failed("sheaf-torsor", std::move(found));
  std::vector<std::int64_t> counts(sets.counts().begin(), sets.counts().end());
  report.with_count("sections", counts).with_count("global_sections", static_cast<std::int64_t>(sets.count(space.whole())));
  return report;
}

SheafTorsor as_sheaf_torsor(SheafAction action) {
  const auto report = is_sheaf_torsor(action);
  if (!report.pass()) {
    const auto& w = report.witnesses().front();
    throw Error(ErrorKind::NotASheafTorsor, w.indices, w.axiom + " fails");
  }
  return SheafTorsor(std::move(action));
}

std::vector<SectionIndex> sections(const SheafTorsor& torsor, OpenIndex u) {
  if (u >= torsor.space().num_opens()) throw Error(ErrorKind::UnknownOpen, {u}, "open index out of range");
  std::vector<SectionIndex> out(torsor.action().sets().count(u));
  std::iota(out.begin(), out.end(), SectionIndex{0});
  return out;
}

std::vector<SectionIndex> global_sections(const SheafTorsor& torsor) { return sections(torsor, torsor.space().whole()); }

SheafAction lift_point_action(const GroupAction& action) {
  const auto space = one_point_space();
  const auto trivial = build_group(1, {{0}});
  const auto& G = action.group();
  auto sets = as_sheaf(Presheaf(space, {1, action.set_size()}, {{{1, 0}, std::vector<SectionIndex>(action.set_size(), 0)}}));
  auto group_sets = as_sheaf(Presheaf(space, {1, G.order()}, {{{1, 0}, std::vector<SectionIndex>(G.order(), 0)}}));
  auto groups = build_sheaf_of_groups(std::move(group_sets), {trivial, G});
  return build_sheaf_action(std::move(groups), std::move(sets), {Table{{0}}, action.table()});
}

SheafTorsor lift_point_torsor(const Torsor& torsor) { return as_sheaf_torsor(lift_point_action(torsor.action())); }

}  // namespace torsorkit
