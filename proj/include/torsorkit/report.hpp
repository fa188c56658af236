#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace torsorkit {

/// One violated axiom together with the indices that exhibit the violation.
struct Witness {
  std::string axiom;
  std::vector<std::size_t> indices;

  friend bool operator==(const Witness&, const Witness&) = default;
};

using CountValue = std::variant<std::int64_t, std::vector<std::int64_t>>;

/// Structured outcome of a check. A failing report always carries at least one
/// witness and a passing report carries none; the factories enforce this.
class Report {
 public:
  static Report passed(std::string check);
  static Report failed(std::string check, std::vector<Witness> witnesses);

  bool pass() const noexcept { return witnesses_.empty(); }
  const std::string& check() const noexcept { return check_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
  const std::map<std::string, CountValue>& counts() const noexcept { return counts_; }

  Report& with_count(const std::string& key, CountValue value);
  /// Appends another report's witnesses (keeping this report's name).
  Report& absorb(const Report& other);

 private:
  Report(std::string check, std::vector<Witness> witnesses);

  std::string check_;
  std::vector<Witness> witnesses_;
  std::map<std::string, CountValue> counts_;
};

}  // namespace torsorkit
