#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "torsorkit/constructions.hpp"
#include "torsorkit/finite_group.hpp"
#include "torsorkit/finite_space_sheaves.hpp"
#include "torsorkit/group_action.hpp"
#include "torsorkit/nerve_cocycles.hpp"
#include "torsorkit/report.hpp"

namespace torsorkit::io {

using nlohmann::json;

/// A document that does not have the expected shape (as opposed to one that
/// parses but violates a mathematical axiom, which raises torsorkit::Error).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_file(const std::string& path);

/// {"order": n, "cayley": [[...]]} or a catalog name string.
FiniteGroup parse_group(const json& j);
json group_to_json(const FiniteGroup& group);

/// {"group": ..., "members": [...]}
Subgroup parse_subgroup(const json& j);

/// {"group": ..., "set_size": m, "act": [[...]]}
GroupAction parse_action(const json& j);
json action_to_json(const GroupAction& action);

/// {"opens": n, "edges": [[i,j]], "triples": [[i,j,k]]}
Nerve parse_nerve(const json& j);
json nerve_to_json(const Nerve& nerve);

/// {"nerve": ..., "group": ..., "g": {"i,j": element}}
NerveCocycle parse_cocycle(const json& j);
json cocycle_to_json(const NerveCocycle& c);

/// {"points": n, "opens": [[...]]}
FiniteSpace parse_space(const json& j);
json space_to_json(const FiniteSpace& space);

/// {"space": ..., "sections": {"U": k}, "restrict": {"U,V": [...]}}; open
/// indices refer to the sorted open list of the space.
Presheaf parse_presheaf(const json& j);
json presheaf_to_json(const Presheaf& presheaf);

/// Descent datum for the constant sheaf of a group:
/// {"space": ..., "group": ..., "cover": [U,...], "transition": {"i,j": section}}
DescentDatum parse_descent(const json& j);
json descent_to_json(const DescentDatum& datum, const FiniteGroup& constant_group);

/// {"space": ..., "groups": {"sections", "restrict", "laws": {"U": cayley}},
///  "sets": {"sections", "restrict"}, "act": {"U": [[...]]}}
SheafAction parse_sheaf_action(const json& j);

/// {"p": p, "T": [[...]], "w": [...]}
struct LinearSystem {
  PrimeFieldMatrix T;
  ResidueVector w;
};
LinearSystem parse_linear_system(const json& j);

json report_to_json(const Report& report);

/// "i,j" → (i, j); "i" → (i, i) is rejected.
std::pair<std::size_t, std::size_t> parse_pair_key(const std::string& key);

}  // namespace torsorkit::io
