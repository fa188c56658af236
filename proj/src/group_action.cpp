#include "torsorkit/group_action.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "torsorkit/error.hpp"

namespace torsorkit {

namespace {

void require_point(const GroupAction& action, Point x) {
  if (x >= action.set_size()) {
    throw Error(ErrorKind::PointOutOfRange, {x},
                "point " + std::to_string(x) + " not in [0, " + std::to_string(action.set_size()) + ")");
  }
}

}  // namespace

GroupAction::GroupAction(FiniteGroup group, std::size_t set_size, Table act)
    : group_(std::move(group)), set_size_(set_size), act_(std::move(act)) {}

GroupAction build_action(const FiniteGroup& group, std::size_t set_size, Table act) {
  if (set_size == 0) throw Error(ErrorKind::EmptySet, {}, "an action needs at least one point");
  if (act.size() != group.order()) {
    throw Error(ErrorKind::MalformedTable, {}, "expected one row per group element");
  }
  for (Element g = 0; g < act.size(); ++g) {
    if (act[g].size() != set_size) throw Error(ErrorKind::MalformedTable, {g}, "row has wrong length");
    for (Point x = 0; x < set_size; ++x)
      if (act[g][x] >= set_size) throw Error(ErrorKind::MalformedTable, {g, x}, "entry out of range");
  }
  for (Point x = 0; x < set_size; ++x) {
    if (act[group.identity()][x] != x) {
      throw Error(ErrorKind::IdentityAxiomViolated, {x}, "e·" + std::to_string(x) + " ≠ " + std::to_string(x));
    }
  }
  for (Element g = 0; g < group.order(); ++g)
    for (Element h = 0; h < group.order(); ++h)
      for (Point x = 0; x < set_size; ++x)
        if (act[group.multiply(g, h)][x] != act[g][act[h][x]])
          throw Error(ErrorKind::CompatibilityViolated, {g, h, x}, "(gh)·x ≠ g·(h·x)");
  return GroupAction(group, set_size, std::move(act));
}

std::vector<Point> orbit(const GroupAction& action, Point x) {
  require_point(action, x);
  std::vector<bool> seen(action.set_size(), false);
  for (Element g = 0; g < action.group().order(); ++g) seen[action.apply(g, x)] = true;
  std::vector<Point> out;
  for (Point y = 0; y < seen.size(); ++y)
    if (seen[y]) out.push_back(y);
  return out;
}

std::vector<Element> stabilizer(const GroupAction& action, Point x) {
  require_point(action, x);
  std::vector<Element> out;
  for (Element g = 0; g < action.group().order(); ++g)
    if (action.apply(g, x) == x) out.push_back(g);
  return out;
}

FreenessResult is_free(const GroupAction& action) {
  const auto e = action.group().identity();
  for (Point x = 0; x < action.set_size(); ++x)
    for (Element g = 0; g < action.group().order(); ++g)
      if (g != e && action.apply(g, x) == x) return {false, std::pair{g, x}};
  return {};
}

TransitivityResult is_transitive(const GroupAction& action) {
  const auto reached = orbit(action, 0);
  if (reached.size() == action.set_size()) return {};
  Point missing = 0;
  while (std::binary_search(reached.begin(), reached.end(), missing)) ++missing;
  return {false, std::pair<Point, Point>{0, missing}};
}

Torsor as_torsor(const GroupAction& action) {
  if (action.set_size() == 0) throw Error(ErrorKind::EmptySet, {}, "a torsor must be nonempty");
  if (auto f = is_free(action); !f.free) {
    auto [g, x] = *f.witness;
    throw Error(ErrorKind::NotFree, {g, x},
                "element " + std::to_string(g) + " fixes point " + std::to_string(x));
  }
  if (auto t = is_transitive(action); !t.transitive) {
    auto [x, y] = *t.witness;
    throw Error(ErrorKind::NotTransitive, {x, y},
                "no element carries " + std::to_string(x) + " to " + std::to_string(y));
  }
  // Unique-transport criterion as a second, independent route.
  for (Point x = 0; x < action.set_size(); ++x) {
    for (Point y = 0; y < action.set_size(); ++y) {
      std::size_t hits = 0;
      for (Element g = 0; g < action.group().order(); ++g) hits += action.apply(g, x) == y;
      if (hits != 1) throw std::logic_error("free+transitive action without unique transport");
    }
  }
  return Torsor(action);
}

Element transporter(const Torsor& torsor, Point x, Point y) {
  const auto& action = torsor.action();
  require_point(action, x);
  require_point(action, y);
  std::optional<Element> found;
  for (Element g = 0; g < action.group().order(); ++g) {
    if (action.apply(g, x) != y) continue;
    if (found) throw std::logic_error("torsor with two transporters");
    found = g;
  }
  if (!found) throw std::logic_error("torsor without a transporter");
  return *found;
}

Trivialization trivialization(const Torsor& torsor, Point x0) {
  const auto& action = torsor.action();
  require_point(action, x0);
  const std::size_t n = torsor.size();
  std::vector<Point> to_points(action.group().order());
  std::vector<Element> to_group(n, n);
  for (Element g = 0; g < to_points.size(); ++g) {
    to_points[g] = action.apply(g, x0);
    to_group[to_points[g]] = g;
  }
  if (to_points.size() != n || std::count(to_group.begin(), to_group.end(), n) != 0) {
    throw std::logic_error("orbit map of a torsor is not a bijection");
  }
  return Trivialization(x0, std::move(to_points), std::move(to_group));
}

BasepointChange basepoint_change(const Torsor& torsor, Point x0, Point x1) {
  const auto h = transporter(torsor, x0, x1);
  const auto& action = torsor.action();
  BasepointChange out{h, 0, std::nullopt};
  for (Element g = 0; g < action.group().order(); ++g) {
    ++out.checked;
    if (action.apply(g, x1) != action.apply(action.group().multiply(g, h), x0)) {
      out.first_mismatch = g;
      break;
    }
  }
  return out;
}

FiniteGroup transported_group(const Torsor& torsor, Point x0) {
  const auto phi = trivialization(torsor, x0);
  const auto& group = torsor.group();
  const std::size_t n = torsor.size();
  Table law(n, std::vector<std::size_t>(n));
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y)
      law[x][y] = phi.to_point(group.multiply(phi.to_element(x), phi.to_element(y)));
  return build_group(n, std::move(law));
}

GroupAction right_action_as_left(const FiniteGroup& group, std::size_t set_size, const Table& right_table) {
  if (set_size == 0) throw Error(ErrorKind::EmptySet, {}, "an action needs at least one point");
  if (right_table.size() != set_size) throw Error(ErrorKind::MalformedTable, {}, "expected one row per point");
  for (Point x = 0; x < set_size; ++x) {
    if (right_table[x].size() != group.order()) throw Error(ErrorKind::MalformedTable, {x}, "row has wrong length");
    for (Element g = 0; g < group.order(); ++g)
      if (right_table[x][g] >= set_size) throw Error(ErrorKind::MalformedTable, {x, g}, "entry out of range");
  }
  for (Point x = 0; x < set_size; ++x)
    if (right_table[x][group.identity()] != x)
      throw Error(ErrorKind::RightIdentityViolated, {x}, "x·e ≠ x for x = " + std::to_string(x));
  for (Point x = 0; x < set_size; ++x)
    for (Element g = 0; g < group.order(); ++g)
      for (Element h = 0; h < group.order(); ++h)
        if (right_table[right_table[x][g]][h] != right_table[x][group.multiply(g, h)])
          throw Error(ErrorKind::RightCompatibilityViolated, {x, g, h}, "(x·g)·h ≠ x·(gh)");

  Table act(group.order(), std::vector<std::size_t>(set_size));
  for (Element g = 0; g < group.order(); ++g)
    for (Point x = 0; x < set_size; ++x) act[g][x] = right_table[x][g];
  return build_action(opposite_group(group), set_size, std::move(act));
}

GroupAction coset_action(const Subgroup& subgroup) {
  const auto& group = subgroup.parent();
  // coset_of[g] = index of gH; representatives are least elements.
  std::vector<std::size_t> coset_of(group.order(), group.order());
  std::vector<Element> reps;
  for (Element g = 0; g < group.order(); ++g) {
    if (coset_of[g] != group.order()) continue;
    for (auto h : subgroup.members()) coset_of[group.multiply(g, h)] = reps.size();
    reps.push_back(g);
  }
  Table act(group.order(), std::vector<std::size_t>(reps.size()));
  for (Element g = 0; g < group.order(); ++g)
    for (std::size_t c = 0; c < reps.size(); ++c) act[g][c] = coset_of[group.multiply(g, reps[c])];
  return build_action(group, reps.size(), std::move(act));
}

GroupAction regular_action(const FiniteGroup& group) {
  return build_action(group, group.order(), group.cayley());
}

}  // namespace torsorkit
