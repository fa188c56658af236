#include <doctest.h>

#include "oracles.hpp"
#include "test_support.hpp"
#include "torsorkit/json_io.hpp"

using namespace torsorkit;
using namespace torsorkit::io;

TEST_CASE("groups round trip and catalog names parse") {
  for (auto name : catalog_names()) {
    auto g = catalog_group(name);
    CHECK(parse_group(group_to_json(g)) == g);
    CHECK(parse_group(json(std::string(name))) == g);
  }
  CHECK_THROWS_AS(parse_group(json::parse(R"J({"order": 2})J")), SchemaError);
  CHECK_THROWS_AS(parse_group(json::parse(R"J({"order": -1, "cayley": []})J")), SchemaError);
  REQUIRE_ERROR(parse_group(json::parse(R"J({"order": 2, "cayley": [[0,1],[1,1]]})J")), ErrorKind::NoInverse);
  REQUIRE_ERROR(parse_group(json("dihedral(4)")), ErrorKind::UnknownName);
}

TEST_CASE("actions round trip") {
  auto a = regular_action(symmetric_group(3));
  CHECK(parse_action(action_to_json(a)).table() == a.table());
  auto j = json::parse(R"J({"group": "cyclic(2)", "set_size": 2, "act": [[1,0],[1,0]]})J");
  REQUIRE_ERROR(parse_action(j), ErrorKind::IdentityAxiomViolated);
  CHECK_THROWS_AS(parse_action(json::parse(R"J({"group": "cyclic(2)", "act": [[0],[0]]})J")), SchemaError);
}

TEST_CASE("cocycles round trip; reversed keys are inverted") {
  oracle::S3 s;
  auto j = json::parse(R"J({"nerve": {"opens": 3, "edges": [[0,1],[1,2],[0,2]], "triples": []},
                           "group": "symmetric(3)", "g": {"0,1": 0, "2,1": 3, "0,2": 1}})J");
  auto c = parse_cocycle(j);
  CHECK(c.value(1, 2) == s.c132);
  CHECK(parse_cocycle(cocycle_to_json(c)) == c);
  CHECK_THROWS_AS(parse_pair_key("3"), SchemaError);
  CHECK_THROWS_AS(parse_pair_key("a,1"), SchemaError);
  CHECK(parse_pair_key("2,5") == std::pair<std::size_t, std::size_t>{2, 5});
}

TEST_CASE("spaces, presheaves and descent data round trip") {
  auto p = pseudocircle();
  CHECK(parse_space(space_to_json(p)) == p);
  auto gs = constant_group_sheaf(p, cyclic_group(2));
  auto pj = presheaf_to_json(gs.sets());
  auto back = parse_presheaf(pj);
  CHECK(back.counts() == gs.sets().counts());
  CHECK(back.tables() == gs.sets().tables());

  auto d = build_descent_datum(gs, {4, 5}, {{{0, 1}, 1}});
  auto dj = descent_to_json(d, cyclic_group(2));
  auto d2 = parse_descent(dj);
  CHECK(d2.cover() == d.cover());
  CHECK(d2.stored() == d.stored());
}

TEST_CASE("linear systems") {
  auto sys = parse_linear_system(json::parse(R"J({"p": 3, "T": [[1, 1]], "w": [4]})J"));
  CHECK(sys.w == ResidueVector{1});
  CHECK(sys.T.at(0, 1) == 1);
  REQUIRE_ERROR(parse_linear_system(json::parse(R"J({"p": 4, "T": [[1]], "w": [0]})J")), ErrorKind::NotPrime);
  CHECK_THROWS_AS(parse_linear_system(json::parse(R"J({"p": 3, "T": [[1.5]], "w": [0]})J")), SchemaError);
}

TEST_CASE("report serialization is stable") {
  auto r = Report::failed("x", {{"a", {1, 2}}});
  r.with_count("n", std::int64_t{3}).with_count("v", std::vector<std::int64_t>{1, 2});
  CHECK(report_to_json(r).dump() ==
        R"J({"check":"x","counts":{"n":3,"v":[1,2]},"verdict":"fail","witnesses":[{"axiom":"a","indices":[1,2]}]})J");
  CHECK(report_to_json(Report::passed("y")).dump() == R"J({"check":"y","counts":{},"verdict":"pass","witnesses":[]})J");
  CHECK_THROWS(Report::failed("z", {}));
}

TEST_CASE("load_file errors") {
  CHECK_THROWS_AS(load_file("/nonexistent/file.json"), SchemaError);
}
