#include "torsorkit/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "torsorkit/error.hpp"

namespace torsorkit::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

std::size_t index_value(const json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw SchemaError("expected a non-negative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> index_list(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array, got " + j.dump());
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(index_value(x));
  return out;
}

Table table_value(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rows");
  Table t;
  for (const auto& row : j) t.push_back(index_list(row));
  return t;
}

std::size_t parse_index(const std::string& text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw SchemaError("bad index '" + text + "'");
  }
  return v;
}

std::string pair_key(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

std::vector<std::size_t> section_counts(const json& j, std::size_t opens) {
  const auto& sec = field(j, "sections");
  if (!sec.is_object()) throw SchemaError("'sections' must be an object keyed by open index");
  std::vector<std::size_t> counts(opens, 0);
  std::vector<bool> seen(opens, false);
  for (const auto& [key, value] : sec.items()) {
    const auto u = parse_index(key);
    if (u >= opens) throw SchemaError("section count for unknown open " + key);
    counts[u] = index_value(value);
    seen[u] = true;
  }
  for (std::size_t u = 0; u < opens; ++u)
    if (!seen[u]) throw SchemaError("no section count for open " + std::to_string(u));
  return counts;
}

InclusionTables restriction_tables(const json& j) {
  InclusionTables tables;
  if (!j.contains("restrict")) return tables;
  const auto& r = j.at("restrict");
  if (!r.is_object()) throw SchemaError("'restrict' must be an object keyed \"U,V\"");
  for (const auto& [key, value] : r.items()) tables[parse_pair_key(key)] = index_list(value);
  return tables;
}

json sections_json(const std::vector<std::size_t>& counts) {
  json out = json::object();
  for (std::size_t u = 0; u < counts.size(); ++u) out[std::to_string(u)] = counts[u];
  return out;
}

json restrict_json(const Presheaf& p) {
  json out = json::object();
  for (const auto& [key, table] : p.tables()) {
    if (key.first == key.second) continue;
    out[pair_key(key.first, key.second)] = table;
  }
  return out;
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::pair<std::size_t, std::size_t> parse_pair_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw SchemaError("expected key \"i,j\", got '" + key + "'");
  return {parse_index(key.substr(0, comma)), parse_index(key.substr(comma + 1))};
}

FiniteGroup parse_group(const json& j) {
  if (j.is_string()) return catalog_group(j.get<std::string>());
  return build_group(index_value(field(j, "order")), table_value(field(j, "cayley")));
}

json group_to_json(const FiniteGroup& group) { return {{"order", group.order()}, {"cayley", group.cayley()}}; }

Subgroup parse_subgroup(const json& j) {
  return build_subgroup(parse_group(field(j, "group")), index_list(field(j, "members")));
}

GroupAction parse_action(const json& j) {
  return build_action(parse_group(field(j, "group")), index_value(field(j, "set_size")), table_value(field(j, "act")));
}

json action_to_json(const GroupAction& action) {
  return {{"group", group_to_json(action.group())}, {"set_size", action.set_size()}, {"act", action.table()}};
}

Nerve parse_nerve(const json& j) {
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges")) {
    const auto v = index_list(e);
    if (v.size() != 2) throw SchemaError("edges are pairs");
    edges.emplace_back(v[0], v[1]);
  }
  std::vector<Triple> triples;
  if (j.contains("triples")) {
    for (const auto& t : j.at("triples")) {
      const auto v = index_list(t);
      if (v.size() != 3) throw SchemaError("triples have three entries");
      triples.push_back({v[0], v[1], v[2]});
    }
  }
  return build_nerve(index_value(field(j, "opens")), std::move(edges), std::move(triples));
}

json nerve_to_json(const Nerve& nerve) {
  json edges = json::array(), triples = json::array();
  for (auto [i, k] : nerve.edges()) edges.push_back({i, k});
  for (const auto& t : nerve.triples()) triples.push_back(t);
  return {{"opens", nerve.num_opens()}, {"edges", edges}, {"triples", triples}};
}

NerveCocycle parse_cocycle(const json& j) {
  const auto nerve = parse_nerve(field(j, "nerve"));
  const auto group = parse_group(field(j, "group"));
  std::map<Edge, Element> values;
  const auto& g = field(j, "g");
  if (!g.is_object()) throw SchemaError("'g' must be an object keyed \"i,j\"");
  for (const auto& [key, value] : g.items()) {
    auto [a, b] = parse_pair_key(key);
    auto v = index_value(value);
    if (a > b) {
      std::swap(a, b);
      if (v < group.order()) v = group.inverse(v);
    }
    values[{a, b}] = v;
  }
  return check_cocycle(nerve, group, values);
}

json cocycle_to_json(const NerveCocycle& c) {
  json g = json::object();
  for (std::size_t e = 0; e < c.values().size(); ++e) {
    const auto [i, k] = c.nerve().edges()[e];
    g[pair_key(i, k)] = c.values()[e];
  }
  return {{"nerve", nerve_to_json(c.nerve())}, {"group", group_to_json(c.group())}, {"g", g}};
}

FiniteSpace parse_space(const json& j) {
  std::vector<PointSet> opens;
  for (const auto& o : field(j, "opens")) opens.push_back(index_list(o));
  return build_space(index_value(field(j, "points")), std::move(opens));
}

json space_to_json(const FiniteSpace& space) { return {{"points", space.num_points()}, {"opens", space.opens()}}; }

Presheaf parse_presheaf(const json& j) {
  auto space = parse_space(field(j, "space"));
  auto counts = section_counts(j, space.num_opens());
  return Presheaf(std::move(space), std::move(counts), restriction_tables(j));
}

json presheaf_to_json(const Presheaf& p) {
  return {{"space", space_to_json(p.space())}, {"sections", sections_json(p.counts())}, {"restrict", restrict_json(p)}};
}

DescentDatum parse_descent(const json& j) {
  const auto space = parse_space(field(j, "space"));
  const auto group = parse_group(field(j, "group"));
  std::map<Edge, SectionIndex> transition;
  if (j.contains("transition")) {
    const auto& t = j.at("transition");
    if (!t.is_object()) throw SchemaError("'transition' must be an object keyed \"i,j\"");
    for (const auto& [key, value] : t.items()) transition[parse_pair_key(key)] = index_value(value);
  }
  return build_descent_datum(constant_group_sheaf(space, group), index_list(field(j, "cover")), std::move(transition));
}

json descent_to_json(const DescentDatum& datum, const FiniteGroup& constant_group) {
  json t = json::object();
  for (const auto& [key, s] : datum.stored()) t[pair_key(key.first, key.second)] = s;
  return {{"space", space_to_json(datum.space())},
          {"group", group_to_json(constant_group)},
          {"cover", datum.cover()},
          {"transition", t}};
}

SheafAction parse_sheaf_action(const json& j) {
  auto space = parse_space(field(j, "space"));
  const std::size_t n = space.num_opens();
  const auto& gj = field(j, "groups");
  const auto& sj = field(j, "sets");
  auto group_sets = as_sheaf(Presheaf(space, section_counts(gj, n), restriction_tables(gj)));
  const auto& laws = field(gj, "laws");
  std::vector<FiniteGroup> groups;
  for (std::size_t u = 0; u < n; ++u) {
    const auto key = std::to_string(u);
    if (!laws.contains(key)) throw SchemaError("no group law for open " + key);
    groups.push_back(build_group(group_sets.count(u), table_value(laws.at(key))));
  }
  auto sets = as_sheaf(Presheaf(space, section_counts(sj, n), restriction_tables(sj)));
  const auto& aj = field(j, "act");
  std::vector<Table> act;
  for (std::size_t u = 0; u < n; ++u) {
    const auto key = std::to_string(u);
    if (!aj.contains(key)) throw SchemaError("no action table for open " + key);
    act.push_back(table_value(aj.at(key)));
  }
  return build_sheaf_action(build_sheaf_of_groups(std::move(group_sets), std::move(groups)), std::move(sets),
                            std::move(act));
}

LinearSystem parse_linear_system(const json& j) {
  const auto p = index_value(field(j, "p"));
  std::vector<std::vector<std::int64_t>> rows;
  const auto& t = field(j, "T");
  if (!t.is_array()) throw SchemaError("'T' must be an array of rows");
  for (const auto& row : t) {
    if (!row.is_array()) throw SchemaError("'T' rows must be arrays");
    std::vector<std::int64_t> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw SchemaError("matrix entries must be integers");
      r.push_back(x.get<std::int64_t>());
    }
    rows.push_back(std::move(r));
  }
  PrimeFieldMatrix T(static_cast<Residue>(p), rows);
  ResidueVector w;
  for (auto x : index_list(field(j, "w"))) w.push_back(static_cast<Residue>(x % p));
  return {std::move(T), std::move(w)};
}

json report_to_json(const Report& report) {
  json witnesses = json::array();
  for (const auto& w : report.witnesses()) witnesses.push_back({{"axiom", w.axiom}, {"indices", w.indices}});
  json counts = json::object();
  for (const auto& [key, value] : report.counts()) {
    std::visit([&](const auto& v) { counts[key] = v; }, value);
  }
  return {{"check", report.check()},
          {"verdict", report.pass() ? "pass" : "fail"},
          {"witnesses", witnesses},
          {"counts", counts}};
}

}  // namespace torsorkit::io
