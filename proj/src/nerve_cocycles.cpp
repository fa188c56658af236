#include "torsorkit/nerve_cocycles.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "torsorkit/error.hpp"

namespace torsorkit {

namespace {

constexpr std::size_t kClassLimit = 4096;

std::string edge_str(std::size_t i, std::size_t j) { return "{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

Edge ordered(std::size_t i, std::size_t j) { return i < j ? Edge{i, j} : Edge{j, i}; }

// Breadth-first spanning forest: for every open, the tree parent (or itself
// for a root), listed in visiting order.
struct Forest {
  std::vector<std::size_t> order;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> root;
};

Forest spanning_forest(const Nerve& nerve) {
  const std::size_t n = nerve.num_opens();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [i, j] : nerve.edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  Forest f{{}, std::vector<std::size_t>(n, n), std::vector<std::size_t>(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    if (f.parent[r] != n) continue;
    f.parent[r] = r;
    f.root[r] = r;
    std::deque<std::size_t> queue{r};
    while (!queue.empty()) {
      auto i = queue.front();
      queue.pop_front();
      f.order.push_back(i);
      for (auto j : adj[i]) {
        if (f.parent[j] != n) continue;
        f.parent[j] = i;
        f.root[j] = r;
        queue.push_back(j);
      }
    }
  }
  return f;
}

}  // namespace

bool Nerve::has_edge(std::size_t i, std::size_t j) const { return edge_index(i, j).has_value(); }

std::optional<std::size_t> Nerve::edge_index(std::size_t i, std::size_t j) const {
  if (i == j) return std::nullopt;
  const auto e = ordered(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

Nerve build_nerve(std::size_t num_opens, std::vector<Edge> edges, std::vector<Triple> triples) {
  if (num_opens == 0) throw Error(ErrorKind::MalformedTable, {}, "a nerve needs at least one open");
  for (auto& [i, j] : edges) {
    if (i >= num_opens || j >= num_opens || i == j) {
      throw Error(ErrorKind::MalformedTable, {i, j}, "bad edge " + edge_str(i, j));
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto& t : triples) {
    std::sort(t.begin(), t.end());
    if (t[2] >= num_opens || t[0] == t[1] || t[1] == t[2]) {
      throw Error(ErrorKind::MalformedTable, {t[0], t[1], t[2]}, "bad triple");
    }
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  for (const auto& t : triples) {
    for (auto e : {Edge{t[0], t[1]}, Edge{t[1], t[2]}, Edge{t[0], t[2]}}) {
      if (!std::binary_search(edges.begin(), edges.end(), e)) {
        throw Error(ErrorKind::TripleWithoutEdge, {t[0], t[1], t[2]}, "triple lacks edge " + edge_str(e.first, e.second));
      }
    }
  }
  return Nerve(num_opens, std::move(edges), std::move(triples));
}

Nerve cycle_nerve(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::MalformedTable, {n}, "cycle nerve needs at least 3 opens");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back(ordered(i, (i + 1) % n));
  return build_nerve(n, std::move(edges), {});
}

Element NerveCocycle::value(std::size_t i, std::size_t j) const {
  if (i == j) {
    if (i >= nerve_.num_opens()) throw Error(ErrorKind::NotAPath, {i, j}, "open out of range");
    return group_.identity();
  }
  auto idx = nerve_.edge_index(i, j);
  if (!idx) throw Error(ErrorKind::NotAPath, {i, j}, edge_str(i, j) + " is not an edge");
  const auto g = values_[*idx];
  return i < j ? g : group_.inverse(g);
}

NerveCocycle check_cocycle(const Nerve& nerve, const FiniteGroup& group, const std::vector<Element>& values) {
  if (values.size() != nerve.edges().size()) {
    throw Error(ErrorKind::MissingEdgeValue, {}, "expected one value per edge");
  }
  std::map<Edge, Element> assignments;
  for (std::size_t e = 0; e < values.size(); ++e) assignments[nerve.edges()[e]] = values[e];
  return check_cocycle(nerve, group, assignments);
}

NerveCocycle check_cocycle(const Nerve& nerve, const FiniteGroup& group, const std::map<Edge, Element>& assignments) {
  std::vector<Element> values;
  for (const auto& e : nerve.edges()) {
    auto it = assignments.find(e);
    if (it == assignments.end()) {
      throw Error(ErrorKind::MissingEdgeValue, {e.first, e.second}, "no value for " + edge_str(e.first, e.second));
    }
    if (it->second >= group.order()) throw Error(ErrorKind::ElementOutOfRange, {it->second}, "value out of range");
    values.push_back(it->second);
  }
  for (const auto& [e, g] : assignments) {
    if (!nerve.has_edge(e.first, e.second)) {
      throw Error(ErrorKind::MalformedTable, {e.first, e.second}, edge_str(e.first, e.second) + " is not an edge");
    }
  }
  NerveCocycle c(nerve, group, std::move(values));
  for (const auto& t : nerve.triples()) {
    std::array<std::size_t, 3> perm = t;
    do {
      const auto [a, b, d] = perm;
      if (group.multiply(c.value(a, b), c.value(b, d)) != c.value(a, d)) {
        throw Error(ErrorKind::TripleViolation, {t[0], t[1], t[2]},
                    "g_" + std::to_string(a) + std::to_string(b) + "·g_" + std::to_string(b) + std::to_string(d) +
                        " ≠ g_" + std::to_string(a) + std::to_string(d));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return c;
}

NerveCocycle identity_cocycle(const Nerve& nerve, const FiniteGroup& group) {
  return check_cocycle(nerve, group, std::vector<Element>(nerve.edges().size(), group.identity()));
}

NerveCocycle apply_coboundary(const NerveCocycle& c, const Cochain& h) {
  const auto& group = c.group();
  if (h.size() != c.nerve().num_opens()) throw Error(ErrorKind::Mismatch, {h.size()}, "cochain length ≠ open count");
  for (auto x : h)
    if (x >= group.order()) throw Error(ErrorKind::ElementOutOfRange, {x}, "cochain value out of range");
  std::vector<Element> out;
  for (std::size_t e = 0; e < c.values().size(); ++e) {
    auto [i, j] = c.nerve().edges()[e];
    out.push_back(group.multiply(group.multiply(h[i], c.values()[e]), group.inverse(h[j])));
  }
  return check_cocycle(c.nerve(), group, out);
}

TrivializationSearch find_trivialization(const NerveCocycle& c) {
  const auto& group = c.group();
  const auto forest = spanning_forest(c.nerve());
  Cochain h(c.nerve().num_opens(), group.identity());
  for (auto j : forest.order) {
    const auto i = forest.parent[j];
    if (i != j) h[j] = group.multiply(c.value(j, i), h[i]);
  }
  for (std::size_t e = 0; e < c.values().size(); ++e) {
    auto [i, j] = c.nerve().edges()[e];
    if (c.values()[e] != group.multiply(h[i], group.inverse(h[j]))) return {std::nullopt, Edge{i, j}};
  }
  return {std::move(h), std::nullopt};
}

std::optional<Cochain> are_equivalent(const NerveCocycle& c1, const NerveCocycle& c2) {
  if (!(c1.nerve() == c2.nerve()) || !(c1.group() == c2.group())) {
    throw Error(ErrorKind::Mismatch, {}, "cocycles live on different nerves or groups");
  }
  const auto& group = c1.group();
  const auto& nerve = c1.nerve();
  const auto forest = spanning_forest(nerve);
  const std::size_t n = nerve.num_opens();
  Cochain h(n, group.identity());

  for (std::size_t root = 0; root < n; ++root) {
    if (forest.root[root] != root) continue;
    bool solved = false;
    for (Element start = 0; start < group.order() && !solved; ++start) {
      h[root] = start;
      // h_j = c2_ij^{-1}·h_i·c1_ij along tree edges i → j.
      for (auto j : forest.order) {
        if (forest.root[j] != root || j == root) continue;
        const auto i = forest.parent[j];
        h[j] = group.multiply(group.multiply(c2.value(j, i), h[i]), c1.value(i, j));
      }
      solved = true;
      for (std::size_t e = 0; e < nerve.edges().size() && solved; ++e) {
        auto [i, j] = nerve.edges()[e];
        if (forest.root[i] != root) continue;
        solved = c2.values()[e] == group.multiply(group.multiply(h[i], c1.values()[e]), group.inverse(h[j]));
      }
    }
    if (!solved) return std::nullopt;
  }
  return h;
}

Element holonomy(const NerveCocycle& c, const std::vector<std::size_t>& path) {
  if (path.empty()) throw Error(ErrorKind::NotAPath, {}, "empty path");
  if (path.front() != path.back()) throw Error(ErrorKind::PathNotClosed, {path.front(), path.back()}, "path is not closed");
  for (auto i : path)
    if (i >= c.nerve().num_opens()) throw Error(ErrorKind::NotAPath, {i}, "open out of range");
  Element acc = c.group().identity();
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto i = path[k], j = path[k + 1];
    if (!c.nerve().has_edge(i, j)) throw Error(ErrorKind::NotAPath, {i, j}, edge_str(i, j) + " is not an edge");
    acc = c.group().multiply(acc, c.value(i, j));
  }
  return acc;
}

std::vector<CocycleClass> equivalence_classes(const Nerve& nerve, const FiniteGroup& group) {
  const std::size_t m = nerve.edges().size();
  std::size_t total = 1;
  for (std::size_t e = 0; e < m; ++e) {
    total *= group.order();
    if (total > kClassLimit) throw Error(ErrorKind::TooLarge, {group.order(), m}, "more than 4096 assignments");
  }

  std::vector<CocycleClass> classes;
  std::vector<NerveCocycle> reps;
  std::vector<Element> values(m, 0);
  for (std::size_t code = 0; code < total; ++code) {
    for (std::size_t e = m, rest = code; e-- > 0; rest /= group.order()) values[e] = rest % group.order();
    std::optional<NerveCocycle> c;
    try {
      c = check_cocycle(nerve, group, values);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::TripleViolation) throw;
      continue;
    }
    std::size_t k = 0;
    while (k < reps.size() && !are_equivalent(reps[k], *c)) ++k;
    if (k == reps.size()) {
      reps.push_back(*c);
      classes.push_back({values, {}});
    }
    classes[k].members.push_back(values);
  }
  return classes;
}

}  // namespace torsorkit
