#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "torsorkit/nerve_cocycles.hpp"

using namespace torsorkit;

namespace {

Nerve triangle() { return build_nerve(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 1, 2}}); }

// (g12, g23, g13) with opens numbered from 1, as cocycles on three arcs are
// usually written.
NerveCocycle arcs(const Nerve& n, const FiniteGroup& g, Element g12, Element g23, Element g13) {
  return check_cocycle(n, g, std::map<Edge, Element>{{{0, 1}, g12}, {{1, 2}, g23}, {{0, 2}, g13}});
}

void require_coboundary(const NerveCocycle& from, const NerveCocycle& to, const Cochain& h) {
  const auto& g = from.group();
  for (const auto& [i, j] : from.nerve().edges())
    REQUIRE(to.value(i, j) == g.multiply(g.multiply(h[i], from.value(i, j)), g.inverse(h[j])));
}

std::vector<NerveCocycle> all_cocycles(const Nerve& n, const FiniteGroup& g) {
  std::vector<NerveCocycle> out;
  std::vector<Element> v(n.edges().size(), 0);
  while (true) {
    if (oracle::satisfies_triples(n, g, v)) out.push_back(check_cocycle(n, g, v));
    std::size_t k = v.size();
    while (k > 0 && ++v[k - 1] == g.order()) v[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("build_nerve examples") {
  auto c3 = cycle_nerve(3);
  CHECK(c3.num_opens() == 3);
  CHECK(c3.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(c3.triples().empty());
  CHECK(triangle().triples().size() == 1);
  auto w = REQUIRE_ERROR(build_nerve(3, {{0, 1}, {1, 2}}, {{0, 1, 2}}), ErrorKind::TripleWithoutEdge);
  CHECK(w == std::vector<std::size_t>{0, 1, 2});
  REQUIRE_ERROR(build_nerve(3, {{1, 1}}, {}), ErrorKind::MalformedTable);
  REQUIRE_ERROR(build_nerve(3, {{1, 3}}, {}), ErrorKind::MalformedTable);
  CHECK(build_nerve(3, {{2, 1}, {1, 0}}, {}).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(c3.edge_index(2, 0) == std::optional<std::size_t>{1});
  CHECK_FALSE(build_nerve(3, {{0, 1}}, {}).has_edge(1, 2));
}

TEST_CASE("check_cocycle examples") {
  auto z2 = cyclic_group(2);
  CHECK(arcs(cycle_nerve(3), z2, 0, 0, 1).value(0, 2) == 1);
  CHECK(arcs(triangle(), z2, 1, 1, 0).value(2, 0) == 0);
  auto w = REQUIRE_ERROR(arcs(triangle(), z2, 1, 1, 1), ErrorKind::TripleViolation);
  CHECK(w == std::vector<std::size_t>{0, 1, 2});
  REQUIRE_ERROR(check_cocycle(cycle_nerve(3), z2, std::map<Edge, Element>{{{0, 1}, 0}}), ErrorKind::MissingEdgeValue);
  REQUIRE_ERROR(check_cocycle(cycle_nerve(3), z2, std::vector<Element>{0, 0, 2}), ErrorKind::ElementOutOfRange);
}

TEST_CASE("derived values") {
  oracle::S3 s;
  auto c = arcs(cycle_nerve(3), symmetric_group(3), s.t12, s.id, s.c123);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.value(i, i) == s.id);
  CHECK(c.value(2, 0) == s.c132);
  CHECK(c.value(1, 0) == s.t12);
}

TEST_CASE("triple identity is checked in every ordering") {
  oracle::S3 s;
  auto s3 = symmetric_group(3);
  // g12·g23 = g13 in one ordering implies all for a group; the brute-force
  // oracle and the validator agree on all 216 assignments.
  std::size_t valid = 0;
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b)
      for (Element c = 0; c < 6; ++c) {
        bool ok = true;
        try {
          arcs(triangle(), s3, a, b, c);
        } catch (const Error&) {
          ok = false;
        }
        CHECK(ok == (s3.multiply(a, b) == c));
        valid += ok;
      }
  CHECK(valid == 36);
  (void)s;
}

TEST_CASE("apply_coboundary examples") {
  auto z2 = cyclic_group(2);
  auto c = arcs(cycle_nerve(3), z2, 0, 0, 1);
  CHECK(apply_coboundary(c, {0, 0, 0}) == c);
  CHECK(apply_coboundary(c, {1, 0, 0}) == arcs(cycle_nerve(3), z2, 1, 0, 0));
  REQUIRE_ERROR(apply_coboundary(c, {0, 0}), ErrorKind::Mismatch);

  auto s3 = symmetric_group(3);
  oracle::S3 s;
  auto d = arcs(triangle(), s3, s.t12, s.t23, s3.multiply(s.t12, s.t23));
  Cochain h = {s.c123, s.t13, s.id};
  Cochain hinv = {s.c132, s.t13, s.id};
  CHECK(apply_coboundary(apply_coboundary(d, h), hinv) == d);
  require_coboundary(d, apply_coboundary(d, h), h);
}

TEST_CASE("coboundary is an action of the cochain group") {
  auto s3 = symmetric_group(3);
  auto n = cycle_nerve(3);
  std::mt19937 rng(11);
  std::uniform_int_distribution<Element> pick(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = check_cocycle(n, s3, std::vector<Element>{pick(rng), pick(rng), pick(rng)});
    Cochain h1 = {pick(rng), pick(rng), pick(rng)}, h2 = {pick(rng), pick(rng), pick(rng)}, prod(3);
    for (int i = 0; i < 3; ++i) prod[i] = s3.multiply(h2[i], h1[i]);
    CHECK(apply_coboundary(apply_coboundary(c, h1), h2) == apply_coboundary(c, prod));
  }
}

TEST_CASE("find_trivialization examples") {
  auto z2 = cyclic_group(2);
  auto id = identity_cocycle(cycle_nerve(3), z2);
  auto t = find_trivialization(id);
  REQUIRE(t.trivial());
  CHECK(*t.cochain == Cochain{0, 0, 0});
  auto twisted = find_trivialization(arcs(cycle_nerve(3), z2, 0, 0, 1));
  CHECK_FALSE(twisted.trivial());
  CHECK(twisted.violating_edge.has_value());
  CHECK_FALSE(oracle::trivial(cycle_nerve(3), z2, arcs(cycle_nerve(3), z2, 0, 0, 1).values()));

  auto z3 = cyclic_group(3);
  auto c = arcs(cycle_nerve(3), z3, 0, 0, 1);
  CHECK_FALSE(find_trivialization(c).trivial());
  CHECK(holonomy(c, {0, 1, 2, 0}) == 2);
  CHECK(holonomy(c, {0, 2, 1, 0}) == 1);
}

TEST_CASE("are_equivalent examples") {
  auto z2 = cyclic_group(2);
  auto n = cycle_nerve(3);
  auto a = arcs(n, z2, 0, 0, 1);
  // Over Z/2 the holonomy of a C3 cocycle is the sum of its three values, so
  // (0,0,1) and (1,1,1) share a class while (1,1,0) sits with the identity.
  auto b = arcs(n, z2, 1, 1, 1);
  auto h = are_equivalent(a, b);
  REQUIRE(h);
  require_coboundary(a, b, *h);
  CHECK(oracle::equivalent(n, z2, a.values(), b.values()));
  auto c = arcs(n, z2, 1, 1, 0);
  CHECK_FALSE(are_equivalent(a, c));
  CHECK_FALSE(oracle::equivalent(n, z2, a.values(), c.values()));
  CHECK(are_equivalent(identity_cocycle(n, z2), c).has_value());
  CHECK_FALSE(are_equivalent(a, identity_cocycle(n, z2)));
  REQUIRE_ERROR(are_equivalent(a, identity_cocycle(n, cyclic_group(3))), ErrorKind::Mismatch);
  REQUIRE_ERROR(are_equivalent(a, identity_cocycle(triangle(), z2)), ErrorKind::Mismatch);
}

TEST_CASE("holonomy examples") {
  auto z2 = cyclic_group(2);
  CHECK(holonomy(arcs(cycle_nerve(3), z2, 0, 0, 1), {0, 1, 2, 0}) == 1);
  oracle::S3 s;
  auto s3 = symmetric_group(3);
  auto c = arcs(cycle_nerve(3), s3, s.id, s.id, s.c123);
  CHECK(holonomy(c, {0, 1, 2, 0}) == s.c132);
  CHECK(holonomy(c, {0}) == s.id);
  CHECK(holonomy(c, {0, 1, 0}) == s.id);
  REQUIRE_ERROR(holonomy(c, {0, 1, 2}), ErrorKind::PathNotClosed);
  auto path = build_nerve(3, {{0, 1}, {1, 2}}, {});
  auto pc = check_cocycle(path, s3, std::vector<Element>{s.t12, s.t23});
  REQUIRE_ERROR(holonomy(pc, {0, 2, 0}), ErrorKind::NotAPath);
  // Along tree edges of a trivialized cocycle the product is e.
  auto t = find_trivialization(pc);
  REQUIRE(t.trivial());
  CHECK(holonomy(pc, {0, 1, 2, 1, 0}) == s.id);
}

TEST_CASE("equivalence_classes examples") {
  auto z2 = equivalence_classes(cycle_nerve(3), cyclic_group(2));
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].members.size() == 4);
  CHECK(z2[1].members.size() == 4);
  CHECK(z2[0].representative == std::vector<Element>{0, 0, 0});

  auto s3 = equivalence_classes(cycle_nerve(3), symmetric_group(3));
  CHECK(s3.size() == 3);
  std::size_t total = 0;
  for (const auto& c : s3) total += c.members.size();
  CHECK(total == 216);

  CHECK(equivalence_classes(triangle(), cyclic_group(2)).size() == 1);
  REQUIRE_ERROR(equivalence_classes(cycle_nerve(5), symmetric_group(3)), ErrorKind::TooLarge);
}

TEST_CASE("classes match the brute-force partition") {
  for (auto name : {"cyclic(2)", "cyclic(3)", "symmetric(3)", "klein_four"}) {
    auto g = catalog_group(name);
    for (const auto& n : {cycle_nerve(3), triangle(), build_nerve(3, {{0, 1}, {1, 2}}, {})}) {
      auto classes = equivalence_classes(n, g);
      std::vector<std::size_t> sizes;
      for (const auto& c : classes) {
        sizes.push_back(c.members.size());
        CHECK(c.representative == c.members.front());
        CHECK(std::is_sorted(c.members.begin(), c.members.end()));
      }
      std::sort(sizes.begin(), sizes.end());
      CHECK(sizes == oracle::class_sizes(n, g));
    }
  }
}

TEST_CASE("triviality and equivalence decisions match brute force") {
  for (auto name : {"cyclic(2)", "cyclic(3)", "symmetric(3)"}) {
    auto g = catalog_group(name);
    for (const auto& n : {cycle_nerve(3), triangle()}) {
      auto cs = all_cocycles(n, g);
      for (const auto& c : cs) {
        auto t = find_trivialization(c);
        auto e = are_equivalent(identity_cocycle(n, g), c);
        CHECK(t.trivial() == oracle::trivial(n, g, c.values()));
        CHECK(t.trivial() == e.has_value());
        if (t.trivial()) {
          require_coboundary(identity_cocycle(n, g), c, *t.cochain);
          require_coboundary(identity_cocycle(n, g), c, *e);
        }
      }
      // Equivalence relation properties and agreement with brute force.
      for (std::size_t a = 0; a < cs.size(); a += 3)
        for (std::size_t b = 0; b < cs.size(); b += 2) {
          auto h = are_equivalent(cs[a], cs[b]);
          CHECK(h.has_value() == oracle::equivalent(n, g, cs[a].values(), cs[b].values()));
          CHECK(h.has_value() == are_equivalent(cs[b], cs[a]).has_value());
          if (h) require_coboundary(cs[a], cs[b], *h);
        }
      for (const auto& c : cs) CHECK(are_equivalent(c, c).has_value());
    }
  }
}

TEST_CASE("equivalence is transitive on C3 over Z/3") {
  auto g = cyclic_group(3);
  auto cs = all_cocycles(cycle_nerve(3), g);
  for (const auto& a : cs)
    for (const auto& b : cs)
      if (are_equivalent(a, b))
        for (const auto& c : cs)
          if (are_equivalent(b, c)) CHECK(are_equivalent(a, c).has_value());
}

TEST_CASE("on cycle nerves equivalence is conjugacy of holonomy") {
  auto g = symmetric_group(3);
  for (std::size_t len : {3, 4}) {
    auto n = cycle_nerve(len);
    std::vector<std::size_t> loop(len + 1);
    std::iota(loop.begin(), loop.end(), std::size_t{0});
    loop.back() = 0;
    auto cs = all_cocycles(n, g);
    std::mt19937 rng(static_cast<unsigned>(len));
    for (int trial = 0; trial < 300; ++trial) {
      const auto& a = cs[rng() % cs.size()];
      const auto& b = cs[rng() % cs.size()];
      const Element ha = holonomy(a, loop), hb = holonomy(b, loop);
      bool conj = false;
      for (Element k = 0; k < g.order(); ++k) conj = conj || g.multiply(g.multiply(k, ha), g.inverse(k)) == hb;
      CHECK(are_equivalent(a, b).has_value() == conj);
      CHECK(find_trivialization(a).trivial() == (ha == g.identity()));
    }
  }
}
