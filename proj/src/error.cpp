#include "torsorkit/error.hpp"

#include "torsorkit/report.hpp"

namespace torsorkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::MissingInverse: return "MissingInverse";
    case ErrorKind::IdentityAxiomViolated: return "IdentityAxiomViolated";
    case ErrorKind::CompatibilityViolated: return "CompatibilityViolated";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::ElementOutOfRange: return "ElementOutOfRange";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::RightIdentityViolated: return "RightIdentityViolated";
    case ErrorKind::RightCompatibilityViolated: return "RightCompatibilityViolated";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySolutionSet: return "EmptySolutionSet";
    case ErrorKind::TripleWithoutEdge: return "TripleWithoutEdge";
    case ErrorKind::MissingEdgeValue: return "MissingEdgeValue";
    case ErrorKind::TripleViolation: return "TripleViolation";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::PathNotClosed: return "PathNotClosed";
    case ErrorKind::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case ErrorKind::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case ErrorKind::MissingEmpty: return "MissingEmpty";
    case ErrorKind::MissingWhole: return "MissingWhole";
    case ErrorKind::UnknownOpen: return "UnknownOpen";
    case ErrorKind::CoverIncomplete: return "CoverIncomplete";
    case ErrorKind::NoLocalSection: return "NoLocalSection";
    case ErrorKind::NotASheaf: return "NotASheaf";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotASheafTorsor: return "NotASheafTorsor";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::vector<std::size_t> witness, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      witness_(std::move(witness)) {}

Report::Report(std::string check, std::vector<Witness> witnesses)
    : check_(std::move(check)), witnesses_(std::move(witnesses)) {}

Report Report::passed(std::string check) { return Report(std::move(check), {}); }

Report Report::failed(std::string check, std::vector<Witness> witnesses) {
  if (witnesses.empty()) {
    throw std::logic_error("failing report for '" + check + "' needs a witness");
  }
  return Report(std::move(check), std::move(witnesses));
}

Report& Report::with_count(const std::string& key, CountValue value) {
  counts_[key] = std::move(value);
  return *this;
}

Report& Report::absorb(const Report& other) {
  witnesses_.insert(witnesses_.end(), other.witnesses_.begin(), other.witnesses_.end());
  return *this;
}

}  // namespace torsorkit
