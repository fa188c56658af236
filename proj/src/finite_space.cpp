#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "torsorkit/error.hpp"
#include "torsorkit/finite_space_sheaves.hpp"

namespace torsorkit {

namespace {

constexpr std::size_t kMaxPoints = 64;
constexpr std::size_t kMaxOpens = 64;

PointSet to_points(std::uint64_t mask) {
  PointSet out;
  for (std::size_t x = 0; mask != 0; ++x, mask >>= 1)
    if (mask & 1) out.push_back(x);
  return out;
}

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

bool canonical_less(std::uint64_t a, std::uint64_t b) {
  const auto pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return to_points(a) < to_points(b);
}

}  // namespace

FiniteSpace::FiniteSpace(std::size_t num_points, std::vector<std::uint64_t> masks)
    : num_points_(num_points), masks_(std::move(masks)) {
  const std::size_t n = masks_.size();
  auto index_of = [&](std::uint64_t m) {
    return static_cast<OpenIndex>(std::find(masks_.begin(), masks_.end(), m) - masks_.begin());
  };
  meet_.assign(n, std::vector<OpenIndex>(n));
  join_.assign(n, std::vector<OpenIndex>(n));
  for (OpenIndex u = 0; u < n; ++u)
    for (OpenIndex v = 0; v < n; ++v) {
      meet_[u][v] = index_of(masks_[u] & masks_[v]);
      join_[u][v] = index_of(masks_[u] | masks_[v]);
    }
  minimal_.resize(num_points_);
  for (std::size_t x = 0; x < num_points_; ++x) {
    std::uint64_t m = full_mask(num_points_);
    for (auto open : masks_)
      if (open >> x & 1) m &= open;
    minimal_[x] = index_of(m);
  }
}

PointSet FiniteSpace::open(OpenIndex u) const { return to_points(masks_.at(u)); }

std::vector<PointSet> FiniteSpace::opens() const {
  std::vector<PointSet> out;
  for (auto m : masks_) out.push_back(to_points(m));
  return out;
}

OpenIndex FiniteSpace::minimal_open(std::size_t x) const {
  if (x >= num_points_) throw Error(ErrorKind::PointOutOfRange, {x}, "point out of range");
  return minimal_[x];
}

std::optional<OpenIndex> FiniteSpace::find_open(const PointSet& points) const {
  std::uint64_t m = 0;
  for (auto x : points) {
    if (x >= num_points_) return std::nullopt;
    m |= std::uint64_t{1} << x;
  }
  auto it = std::find(masks_.begin(), masks_.end(), m);
  if (it == masks_.end()) return std::nullopt;
  return static_cast<OpenIndex>(it - masks_.begin());
}

OpenIndex FiniteSpace::open_index(const PointSet& points) const {
  if (auto u = find_open(points)) return *u;
  std::string listing;
  for (auto x : points) listing += (listing.empty() ? "" : ",") + std::to_string(x);
  throw Error(ErrorKind::UnknownOpen, points, "{" + listing + "} is not open");
}

FiniteSpace build_space(std::size_t num_points, std::vector<PointSet> opens) {
  if (num_points == 0 || num_points > kMaxPoints) {
    throw Error(ErrorKind::TooLarge, {num_points}, "spaces need between 1 and 64 points");
  }
  std::vector<std::uint64_t> masks;
  for (const auto& open : opens) {
    std::uint64_t m = 0;
    for (auto x : open) {
      if (x >= num_points) throw Error(ErrorKind::PointOutOfRange, {x}, "open mentions point " + std::to_string(x));
      m |= std::uint64_t{1} << x;
    }
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), canonical_less);
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  if (masks.size() > kMaxOpens) throw Error(ErrorKind::TooLarge, {masks.size()}, "more than 64 opens");
  if (masks.empty() || masks.front() != 0) throw Error(ErrorKind::MissingEmpty, {}, "the empty set must be open");
  if (masks.back() != full_mask(num_points)) throw Error(ErrorKind::MissingWhole, {}, "the whole space must be open");
  auto present = [&](std::uint64_t m) { return std::find(masks.begin(), masks.end(), m) != masks.end(); };
  for (std::size_t u = 0; u < masks.size(); ++u)
    for (std::size_t v = u + 1; v < masks.size(); ++v)
      if (!present(masks[u] | masks[v])) throw Error(ErrorKind::NotClosedUnderUnion, {u, v}, "union is not open");
  for (std::size_t u = 0; u < masks.size(); ++u)
    for (std::size_t v = u + 1; v < masks.size(); ++v)
      if (!present(masks[u] & masks[v]))
        throw Error(ErrorKind::NotClosedUnderIntersection, {u, v}, "intersection is not open");
  return FiniteSpace(num_points, std::move(masks));
}

FiniteSpace generate_space(std::size_t num_points, const std::vector<PointSet>& generators) {
  if (num_points == 0 || num_points > kMaxPoints) {
    throw Error(ErrorKind::TooLarge, {num_points}, "spaces need between 1 and 64 points");
  }
  std::vector<PointSet> opens = generators;
  opens.push_back({});
  PointSet all(num_points);
  std::iota(all.begin(), all.end(), std::size_t{0});
  opens.push_back(all);
  // Fixpoint of pairwise ∪ and ∩.
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto& o : opens) {
      std::sort(o.begin(), o.end());
      o.erase(std::unique(o.begin(), o.end()), o.end());
    }
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    if (opens.size() > kMaxOpens) throw Error(ErrorKind::TooLarge, {opens.size()}, "more than 64 opens");
    const auto current = opens;
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        PointSet u, i;
        std::set_union(current[a].begin(), current[a].end(), current[b].begin(), current[b].end(), std::back_inserter(u));
        std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(), current[b].end(),
                              std::back_inserter(i));
        for (auto* s : {&u, &i}) {
          if (!std::binary_search(current.begin(), current.end(), *s) &&
              std::find(opens.begin(), opens.end(), *s) == opens.end()) {
            opens.push_back(*s);
            grew = true;
          }
        }
      }
    }
  }
  return build_space(num_points, std::move(opens));
}

FiniteSpace one_point_space() { return build_space(1, {{}, {0}}); }

FiniteSpace pseudocircle() { return generate_space(4, {{0}, {1}, {0, 1, 2}, {0, 1, 3}}); }

std::vector<PointSet> connected_components(const FiniteSpace& space, const PointSet& subset) {
  std::uint64_t sub = 0;
  for (auto x : subset) {
    if (x >= space.num_points()) throw Error(ErrorKind::PointOutOfRange, {x}, "point out of range");
    sub |= std::uint64_t{1} << x;
  }
  std::vector<std::size_t> parent(space.num_points());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto x : to_points(sub)) {
    for (auto y : to_points(space.mask(space.minimal_open(x)) & sub)) {
      auto rx = find(x), ry = find(y);
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  }
  std::vector<PointSet> comps;
  std::vector<std::size_t> slot(space.num_points(), space.num_points());
  for (auto x : to_points(sub)) {
    const auto r = find(x);
    if (slot[r] == space.num_points()) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(x);
  }
  return comps;
}

}  // namespace torsorkit
