// torsorkit: batch front end over the torsor library.
//
//   torsorkit check <kind> <file> [--json]
//   torsorkit generate <family> <args...> [-o <file>]
//   torsorkit query <query> <args...> <file> [--json]
//
// Exit status: 0 pass, 1 semantic failure, 2 I/O, schema or usage error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsorkit/error.hpp"
#include "torsorkit/json_io.hpp"

namespace {

using namespace torsorkit;
using io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Report report;
  json result = nullptr;
  std::string detail;
};

std::size_t parse_number(const std::string& text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::size_t> parse_path(const std::vector<std::string>& parts) {
  std::vector<std::size_t> path;
  for (const auto& part : parts) {
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) path.push_back(parse_number(item));
    }
  }
  return path;
}

Outcome failure(const std::string& check, const Error& e) {
  return {Report::failed(check, {Witness{std::string(to_string(e.kind())), e.witness()}}), nullptr, e.what()};
}

std::vector<std::int64_t> as_counts(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

SheafTorsor load_sheaf_torsor(const json& doc) {
  if (doc.contains("cover")) return glue_from_cocycle(io::parse_descent(doc));
  return as_sheaf_torsor(io::parse_sheaf_action(doc));
}

Outcome run_check(const std::string& kind, const json& doc) {
  const std::string check = kind;
  try {
    if (kind == "group") {
      const auto g = io::parse_group(doc);
      return {Report::passed(check)
                  .with_count("order", static_cast<std::int64_t>(g.order()))
                  .with_count("abelian", static_cast<std::int64_t>(g.is_abelian()))};
    }
    if (kind == "subgroup") {
      const auto h = io::parse_subgroup(doc);
      return {Report::passed(check)
                  .with_count("order", static_cast<std::int64_t>(h.order()))
                  .with_count("index", static_cast<std::int64_t>(h.parent().order() / h.order()))};
    }
    if (kind == "action") {
      const auto a = io::parse_action(doc);
      std::vector<std::int64_t> sizes;
      std::vector<bool> seen(a.set_size(), false);
      for (Point x = 0; x < a.set_size(); ++x) {
        if (seen[x]) continue;
        const auto o = orbit(a, x);
        for (auto y : o) seen[y] = true;
        sizes.push_back(static_cast<std::int64_t>(o.size()));
      }
      return {Report::passed(check)
                  .with_count("points", static_cast<std::int64_t>(a.set_size()))
                  .with_count("orbit_sizes", sizes)};
    }
    if (kind == "torsor") {
      const auto t = as_torsor(io::parse_action(doc));
      return {Report::passed(check)
                  .with_count("points", static_cast<std::int64_t>(t.size()))
                  .with_count("group_order", static_cast<std::int64_t>(t.group().order()))};
    }
    if (kind == "cocycle") {
      const auto c = io::parse_cocycle(doc);
      return {Report::passed(check)
                  .with_count("edges", static_cast<std::int64_t>(c.nerve().edges().size()))
                  .with_count("triples", static_cast<std::int64_t>(c.nerve().triples().size()))};
    }
    if (kind == "space") {
      const auto s = io::parse_space(doc);
      return {Report::passed(check)
                  .with_count("points", static_cast<std::int64_t>(s.num_points()))
                  .with_count("opens", static_cast<std::int64_t>(s.num_opens()))};
    }
    if (kind == "sheaf") return {is_sheaf(io::parse_presheaf(doc))};
    if (kind == "sheaf-torsor") {
      if (doc.contains("cover")) return {is_sheaf_torsor(glue_from_cocycle(io::parse_descent(doc)).action())};
      return {is_sheaf_torsor(io::parse_sheaf_action(doc))};
    }
  } catch (const Error& e) {
    return failure(check, e);
  }
  throw UsageError("unknown check kind '" + kind + "'");
}

json run_generate(const std::string& family, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw UsageError(family + " takes " + std::to_string(n) + " argument(s)");
  };
  if (family == "affine") {
    need(2);
    return io::action_to_json(
        affine_torsor(static_cast<Residue>(parse_number(args[0])), parse_number(args[1])).action());
  }
  if (family == "bases") {
    need(2);
    return io::action_to_json(
        basis_torsor(static_cast<Residue>(parse_number(args[0])), parse_number(args[1])).action());
  }
  if (family == "solution") {
    need(1);
    const auto sys = io::parse_linear_system(io::load_file(args[0]));
    return io::action_to_json(solution_torsor(sys.T, sys.w).action());
  }
  if (family == "coset") {
    need(1);
    const auto doc = io::load_file(args[0]);
    const auto h = io::parse_subgroup(doc);
    if (!doc.contains("g")) throw io::SchemaError("missing field 'g'");
    return io::action_to_json(coset_torsor(h, doc.at("g").get<std::size_t>()).action());
  }
  if (family == "pseudocircle-torsor") {
    need(1);
    if (args[0] != "trivial" && args[0] != "twisted") throw UsageError("variant must be 'trivial' or 'twisted'");
    const auto space = pseudocircle();
    const auto z2 = cyclic_group(2);
    const auto u1 = space.open_index({0, 1, 2});
    const auto u2 = space.open_index({0, 1, 3});
    const auto overlap = space.meet(u1, u2);
    const std::vector<Element> values = args[0] == "twisted" ? std::vector<Element>{0, 1} : std::vector<Element>{0, 0};
    const auto g12 = constant_section(space, overlap, z2, values);
    const auto datum = build_descent_datum(constant_group_sheaf(space, z2), {u1, u2}, {{{0, 1}, g12}});
    return io::descent_to_json(datum, z2);
  }
  throw UsageError("unknown family '" + family + "'");
}

Outcome run_query(const std::string& query, const std::vector<std::string>& args, const json& doc) {
  const std::string check = "query:" + query;
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw UsageError(query + " takes " + std::to_string(n) + " argument(s) before the file");
  };
  try {
    if (query == "transporter") {
      need(2);
      const auto t = as_torsor(io::parse_action(doc));
      const auto g = transporter(t, parse_number(args[0]), parse_number(args[1]));
      return {Report::passed(check), json{{"element", g}}};
    }
    if (query == "orbit" || query == "stabilizer") {
      need(1);
      const auto a = io::parse_action(doc);
      const auto x = parse_number(args[0]);
      const auto set = query == "orbit" ? orbit(a, x) : stabilizer(a, x);
      return {Report::passed(check).with_count("size", static_cast<std::int64_t>(set.size())), json{{query, set}}};
    }
    if (query == "trivialize") {
      need(1);
      const auto triv = trivialization(as_torsor(io::parse_action(doc)), parse_number(args[0]));
      return {Report::passed(check), json{{"basepoint", triv.basepoint()},
                                          {"to_points", triv.to_points()},
                                          {"to_group", triv.to_group()}}};
    }
    if (query == "transported-group") {
      need(1);
      const auto g = transported_group(as_torsor(io::parse_action(doc)), parse_number(args[0]));
      auto out = io::group_to_json(g);
      out["identity"] = g.identity();
      return {Report::passed(check), out};
    }
    if (query == "holonomy") {
      const auto c = io::parse_cocycle(doc);
      const auto path = parse_path(args);
      return {Report::passed(check), json{{"path", path}, {"element", holonomy(c, path)}}};
    }
    if (query == "global-sections" || query == "sections") {
      const auto t = load_sheaf_torsor(doc);
      OpenIndex u = t.space().whole();
      if (query == "sections") {
        need(1);
        u = parse_number(args[0]);
      } else {
        need(0);
      }
      const auto secs = sections(t, u);
      json result{{"open", u}, {"points", t.space().open(u)}};
      if (doc.contains("cover")) result["families"] = descent_families(io::parse_descent(doc), u);
      return {Report::passed(check).with_count("sections", static_cast<std::int64_t>(secs.size())), result};
    }
    if (query == "classes") {
      need(0);
      const auto classes = equivalence_classes(io::parse_nerve(doc.at("nerve")), io::parse_group(doc.at("group")));
      std::vector<std::int64_t> sizes;
      json reps = json::array();
      for (const auto& c : classes) {
        sizes.push_back(static_cast<std::int64_t>(c.members.size()));
        reps.push_back(c.representative);
      }
      return {Report::passed(check)
                  .with_count("classes", static_cast<std::int64_t>(classes.size()))
                  .with_count("sizes", sizes),
              json{{"representatives", reps}}};
    }
  } catch (const Error& e) {
    return failure(check, e);
  }
  throw UsageError("unknown query '" + query + "'");
}

void print_count(std::ostream& out, const std::string& key, const CountValue& value) {
  out << "  " << key << ":";
  if (const auto* scalar = std::get_if<std::int64_t>(&value)) {
    out << ' ' << *scalar;
  } else {
    for (auto v : std::get<std::vector<std::int64_t>>(value)) out << ' ' << v;
  }
  out << '\n';
}

int emit(const Outcome& outcome, bool as_json) {
  const auto& r = outcome.report;
  if (as_json) {
    auto j = io::report_to_json(r);
    if (!outcome.result.is_null()) j["result"] = outcome.result;
    if (!outcome.detail.empty()) j["detail"] = outcome.detail;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << r.check() << ": " << (r.pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& w : r.witnesses()) {
      std::cout << "  witness " << w.axiom << ":";
      for (auto i : w.indices) std::cout << ' ' << i;
      std::cout << '\n';
    }
    if (!outcome.detail.empty()) std::cout << "  detail: " << outcome.detail << '\n';
    for (const auto& [key, value] : r.counts()) print_count(std::cout, key, value);
    if (!outcome.result.is_null()) std::cout << "  result: " << outcome.result.dump() << '\n';
  }
  return r.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite torsors, nonabelian Čech 1-cocycles and sheaf torsors on finite spaces"};
  app.require_subcommand(1);

  std::string kind, check_file;
  bool check_json = false;
  auto* check = app.add_subcommand("check", "Validate a JSON description");
  check->add_option("kind", kind, "group|subgroup|action|torsor|cocycle|space|sheaf|sheaf-torsor")->required();
  check->add_option("file", check_file, "Input JSON file")->required();
  check->add_flag("--json", check_json, "Emit the machine-readable report");

  std::string family, out_file;
  std::vector<std::string> gen_args;
  auto* generate = app.add_subcommand("generate", "Write a torsor or descent datum as JSON");
  generate->add_option("family", family, "affine|solution|coset|bases|pseudocircle-torsor")->required();
  generate->add_option("args", gen_args, "Family arguments");
  generate->add_option("-o,--output", out_file, "Output file (default: standard output)");

  std::string query;
  std::vector<std::string> query_args;
  bool query_json = false;
  auto* q = app.add_subcommand("query", "Compute a quantity from a JSON description");
  q->add_option("query", query,
                "transporter|orbit|stabilizer|trivialize|transported-group|holonomy|global-sections|sections|classes")
      ->required();
  q->add_option("args", query_args, "Query arguments followed by the input file")->required();
  q->add_flag("--json", query_json, "Emit the machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (check->parsed()) return emit(run_check(kind, io::load_file(check_file)), check_json);
    if (generate->parsed()) {
      const auto doc = run_generate(family, gen_args);
      if (out_file.empty()) {
        std::cout << doc.dump(2) << '\n';
      } else {
        std::ofstream out(out_file);
        if (!out) throw io::SchemaError("cannot write '" + out_file + "'");
        out << doc.dump(2) << '\n';
      }
      return kExitPass;
    }
    if (q->parsed()) {
      auto args = query_args;
      const auto file = args.back();
      args.pop_back();
      return emit(run_query(query, args, io::load_file(file)), query_json);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
