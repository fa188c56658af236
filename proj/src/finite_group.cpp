#include "torsorkit/finite_group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>
#include <string>

#include "torsorkit/error.hpp"

namespace torsorkit {

namespace {

std::string idx(std::size_t v) { return std::to_string(v); }

std::optional<std::size_t> parse_call(std::string_view name, std::string_view fn) {
  if (name.size() < fn.size() + 3 || name.substr(0, fn.size()) != fn) return std::nullopt;
  if (name[fn.size()] != '(' || name.back() != ')') return std::nullopt;
  auto digits = name.substr(fn.size() + 1, name.size() - fn.size() - 2);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace

FiniteGroup::FiniteGroup(Table cayley, Element identity, std::vector<Element> inverse)
    : cayley_(std::move(cayley)), identity_(identity), inverse_(std::move(inverse)) {}

bool FiniteGroup::is_abelian() const {
  for (Element g = 0; g < order(); ++g)
    for (Element h = g + 1; h < order(); ++h)
      if (cayley_[g][h] != cayley_[h][g]) return false;
  return true;
}

FiniteGroup build_group(std::size_t order, Table cayley) {
  if (order == 0 || cayley.size() != order) {
    throw Error(ErrorKind::MalformedTable, {},
                "expected " + idx(order) + " rows, got " + idx(cayley.size()));
  }
  for (std::size_t g = 0; g < order; ++g) {
    if (cayley[g].size() != order) {
      throw Error(ErrorKind::MalformedTable, {g}, "row " + idx(g) + " has wrong length");
    }
    for (std::size_t h = 0; h < order; ++h) {
      if (cayley[g][h] >= order) {
        throw Error(ErrorKind::MalformedTable, {g, h}, "entry out of range");
      }
    }
  }

  std::optional<Element> identity;
  for (Element e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (Element g = 0; g < order && ok; ++g) ok = cayley[e][g] == g && cayley[g][e] == g;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorKind::NoIdentity, {}, "no two-sided identity");

  for (Element g = 0; g < order; ++g) {
    const auto& row_g = cayley[g];
    for (Element h = 0; h < order; ++h) {
      const auto& row_gh = cayley[row_g[h]];
      const auto& row_h = cayley[h];
      for (Element k = 0; k < order; ++k) {
        if (row_gh[k] != row_g[row_h[k]]) {
          throw Error(ErrorKind::NonAssociative, {g, h, k},
                      "(" + idx(g) + "·" + idx(h) + ")·" + idx(k) + " differs");
        }
      }
    }
  }

  std::vector<Element> inverse(order);
  for (Element g = 0; g < order; ++g) {
    std::optional<Element> found;
    for (Element h = 0; h < order && !found; ++h)
      if (cayley[g][h] == *identity && cayley[h][g] == *identity) found = h;
    if (!found) throw Error(ErrorKind::NoInverse, {g}, "element " + idx(g) + " has no inverse");
    inverse[g] = *found;
  }
  return FiniteGroup(std::move(cayley), *identity, std::move(inverse));
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::UnknownName, {}, "cyclic(0)");
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return build_group(n, std::move(t));
}

std::vector<std::vector<std::size_t>> permutations_of(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> all;
  do {
    all.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return all;
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::UnknownName, {}, "symmetric(0)");
  const auto perms = permutations_of(n);
  const std::size_t order = perms.size();
  Table t(order, std::vector<std::size_t>(order));
  std::vector<std::size_t> composed(n);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), composed);
      t[a][b] = static_cast<std::size_t>(it - perms.begin());
    }
  }
  return build_group(order, std::move(t));
}

FiniteGroup klein_four_group() {
  Table t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return build_group(4, std::move(t));
}

FiniteGroup catalog_group(std::string_view name) {
  if (name == "klein_four") return klein_four_group();
  if (auto n = parse_call(name, "cyclic"); n && *n >= 1 && *n <= 12) return cyclic_group(*n);
  if (auto n = parse_call(name, "symmetric"); n && *n >= 1 && *n <= 4) return symmetric_group(*n);
  throw Error(ErrorKind::UnknownName, {}, "'" + std::string(name) + "' is not in the catalog");
}

std::vector<std::string_view> catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (int n = 1; n <= 12; ++n) out.push_back("cyclic(" + std::to_string(n) + ")");
    for (int n = 1; n <= 4; ++n) out.push_back("symmetric(" + std::to_string(n) + ")");
    out.push_back("klein_four");
    return out;
  }();
  return {names.begin(), names.end()};
}

FiniteGroup opposite_group(const FiniteGroup& group) {
  const std::size_t n = group.order();
  Table t(n, std::vector<std::size_t>(n));
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h) t[g][h] = group.multiply(h, g);
  return FiniteGroup(std::move(t), group.identity(), group.inverses());
}

FiniteGroup direct_power(const FiniteGroup& group, std::size_t k) {
  const std::size_t n = group.order();
  std::size_t order = 1;
  for (std::size_t i = 0; i < k; ++i) {
    order *= n;
    if (order > 4096) throw Error(ErrorKind::TooLarge, {n, k}, "direct power exceeds 4096 elements");
  }
  auto decode = [&](std::size_t code) {
    std::vector<Element> digits(k);
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = code % n;
      code /= n;
    }
    return digits;
  };
  Table t(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a) {
    const auto da = decode(a);
    for (std::size_t b = 0; b < order; ++b) {
      const auto db = decode(b);
      std::size_t code = 0;
      for (std::size_t i = 0; i < k; ++i) code = code * n + group.multiply(da[i], db[i]);
      t[a][b] = code;
    }
  }
  // Componentwise structure: identity is the all-identity tuple, inverse is
  // componentwise, associativity is inherited.
  std::size_t identity = 0;
  for (std::size_t i = 0; i < k; ++i) identity = identity * n + group.identity();
  std::vector<Element> inverse(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::size_t code = 0;
    for (auto d : decode(a)) code = code * n + group.inverse(d);
    inverse[a] = code;
  }
  return FiniteGroup(std::move(t), identity, std::move(inverse));
}

Subgroup::Subgroup(FiniteGroup parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)) {}

bool Subgroup::contains(Element g) const {
  return std::binary_search(members_.begin(), members_.end(), g);
}

std::size_t Subgroup::position(Element g) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), g);
  if (it == members_.end() || *it != g) {
    throw Error(ErrorKind::ElementOutOfRange, {g}, "element " + idx(g) + " is not in the subgroup");
  }
  return static_cast<std::size_t>(it - members_.begin());
}

FiniteGroup Subgroup::as_group() const {
  const std::size_t n = members_.size();
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = position(parent_.multiply(members_[a], members_[b]));
  return build_group(n, std::move(t));
}

Subgroup build_subgroup(const FiniteGroup& parent, std::vector<Element> members) {
  if (members.empty()) throw Error(ErrorKind::MissingIdentity, {}, "empty member list");
  for (auto g : members) {
    if (g >= parent.order()) throw Error(ErrorKind::ElementOutOfRange, {g}, "member out of range");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto in = [&](Element g) { return std::binary_search(members.begin(), members.end(), g); };

  if (!in(parent.identity())) throw Error(ErrorKind::MissingIdentity, {parent.identity()}, "identity missing");
  for (auto g : members)
    for (auto h : members)
      if (!in(parent.multiply(g, h)))
        throw Error(ErrorKind::NotClosed, {g, h}, idx(g) + "·" + idx(h) + " is not a member");
  for (auto g : members)
    if (!in(parent.inverse(g))) throw Error(ErrorKind::MissingInverse, {g}, "inverse of " + idx(g) + " missing");
  return Subgroup(parent, std::move(members));
}

}  // namespace torsorkit
