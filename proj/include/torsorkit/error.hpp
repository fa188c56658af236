#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torsorkit {

/// Every validation failure the library can raise. The witness attached to an
/// Error holds the offending indices in the order documented at the raise site.
enum class ErrorKind {
  MalformedTable,
  NoIdentity,
  NonAssociative,
  NoInverse,
  UnknownName,
  NotClosed,
  MissingIdentity,
  MissingInverse,
  IdentityAxiomViolated,
  CompatibilityViolated,
  PointOutOfRange,
  ElementOutOfRange,
  EmptySet,
  NotFree,
  NotTransitive,
  RightIdentityViolated,
  RightCompatibilityViolated,
  DimensionMismatch,
  NotPrime,
  TooLarge,
  EmptySolutionSet,
  TripleWithoutEdge,
  MissingEdgeValue,
  TripleViolation,
  Mismatch,
  NotAPath,
  PathNotClosed,
  NotClosedUnderUnion,
  NotClosedUnderIntersection,
  MissingEmpty,
  MissingWhole,
  UnknownOpen,
  CoverIncomplete,
  NoLocalSection,
  NotASheaf,
  NotHomomorphism,
  NotASheafTorsor,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::vector<std::size_t> witness, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace torsorkit
