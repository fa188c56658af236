#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "torsorkit/finite_group.hpp"
#include "torsorkit/group_action.hpp"

namespace torsorkit {

using Residue = std::uint32_t;
using ResidueVector = std::vector<Residue>;

bool is_prime(std::uint64_t p);

/// Vectors of F_p^n are numbered as base-p integers with the first coordinate
/// most significant, i.e. lexicographically.
std::size_t encode_vector(Residue p, const ResidueVector& v);
ResidueVector decode_vector(Residue p, std::size_t n, std::size_t code);

/// A matrix over the prime field F_p. Entries are reduced mod p on construction.
class PrimeFieldMatrix {
 public:
  /// Errors: NotPrime; DimensionMismatch (ragged or empty rows).
  PrimeFieldMatrix(Residue p, const std::vector<std::vector<std::int64_t>>& entries);

  Residue modulus() const noexcept { return p_; }
  std::size_t rows() const noexcept { return entries_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  Residue at(std::size_t r, std::size_t c) const { return entries_[r][c]; }
  const std::vector<ResidueVector>& entries() const noexcept { return entries_; }

  /// T·v; errors: DimensionMismatch.
  ResidueVector apply(const ResidueVector& v) const;

 private:
  Residue p_;
  std::size_t cols_ = 0;
  std::vector<ResidueVector> entries_;
};

struct LinearSolveResult {
  std::optional<ResidueVector> particular;
  /// One vector per free column, ascending; each has a 1 in its free column.
  std::vector<ResidueVector> kernel_basis;
  std::size_t kernel_size = 1;
};

/// Row reduction over F_p. Errors: DimensionMismatch (w length ≠ rows).
LinearSolveResult gaussian_solve(const PrimeFieldMatrix& T, const ResidueVector& w);

/// Rank over F_p.
std::size_t rank(const PrimeFieldMatrix& T);

/// F_p^n acting on itself by translation. Errors: NotPrime; TooLarge (p^n > 256).
Torsor affine_torsor(Residue p, std::size_t n);

/// Additive group of F_p^n, elements numbered by encode_vector.
FiniteGroup vector_group(Residue p, std::size_t n);

/// Solutions of T·v = w under translation by ker(T). Points and kernel elements
/// are listed by brute force in encode_vector order.
/// Errors: TooLarge (p^cols > 4096); DimensionMismatch; EmptySolutionSet.
Torsor solution_torsor(const PrimeFieldMatrix& T, const ResidueVector& w);

/// Elements of the coset gH, sorted (the point numbering of coset_torsor).
std::vector<Element> coset_points(const Subgroup& subgroup, Element g);

/// gH under right multiplication by H, expressed as a left action of H^op.
/// Errors: ElementOutOfRange.
Torsor coset_torsor(const Subgroup& subgroup, Element g);

/// GL_n(F_p): every n×n matrix (row-major base-p code) with full rank,
/// in ascending code order.
struct GeneralLinearGroup {
  Residue p;
  std::size_t n;
  std::vector<std::size_t> matrix_codes;
  FiniteGroup group;
};
GeneralLinearGroup general_linear_group(Residue p, std::size_t n);

/// Ordered bases of F_p^n as tuples of encoded vectors, lexicographic.
std::vector<std::vector<std::size_t>> ordered_bases(Residue p, std::size_t n);

/// The ordered bases of F_p^n under GL_n(F_p).
/// Errors: NotPrime; TooLarge (more than 512 ordered bases).
Torsor basis_torsor(Residue p, std::size_t n);

}  // namespace torsorkit
