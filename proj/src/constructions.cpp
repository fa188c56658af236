#include "torsorkit/constructions.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "torsorkit/error.hpp"

namespace torsorkit {

namespace {

constexpr std::size_t kAffineLimit = 256;
constexpr std::size_t kSolutionLimit = 4096;
constexpr std::size_t kBasisLimit = 512;

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, {static_cast<std::size_t>(p)}, std::to_string(p) + " is not prime");
}

// p^n, or nullopt once it passes limit.
std::optional<std::size_t> bounded_power(std::size_t p, std::size_t n, std::size_t limit) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out *= p;
    if (out > limit) return std::nullopt;
  }
  return out;
}

Residue inverse_mod(Residue a, Residue p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<Residue>(result);
}

// Reduced row echelon form in place; returns pivot columns among the first
// `limit` columns.
std::vector<std::size_t> rref(std::vector<ResidueVector>& m, Residue p, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const std::uint64_t inv = inverse_mod(m[row][col], p);
    for (auto& v : m[row]) v = static_cast<Residue>(v * inv % p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const std::uint64_t factor = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c)
        m[r][c] = static_cast<Residue>((m[r][c] + (p - factor) * m[row][c]) % p);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

ResidueVector add_mod(const ResidueVector& a, const ResidueVector& b, Residue p) {
  ResidueVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
  return out;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::size_t encode_vector(Residue p, const ResidueVector& v) {
  std::size_t code = 0;
  for (auto x : v) code = code * p + x;
  return code;
}

ResidueVector decode_vector(Residue p, std::size_t n, std::size_t code) {
  ResidueVector v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<Residue>(code % p);
    code /= p;
  }
  return v;
}

PrimeFieldMatrix::PrimeFieldMatrix(Residue p, const std::vector<std::vector<std::int64_t>>& entries) : p_(p) {
  require_prime(p);
  if (entries.empty() || entries.front().empty()) {
    throw Error(ErrorKind::DimensionMismatch, {}, "matrix needs at least one row and column");
  }
  cols_ = entries.front().size();
  const auto mod = static_cast<std::int64_t>(p);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != cols_) throw Error(ErrorKind::DimensionMismatch, {r}, "ragged matrix row");
    ResidueVector row(cols_);
    for (std::size_t c = 0; c < cols_; ++c) row[c] = static_cast<Residue>(((entries[r][c] % mod) + mod) % mod);
    entries_.push_back(std::move(row));
  }
}

ResidueVector PrimeFieldMatrix::apply(const ResidueVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, {v.size(), cols_}, "vector length ≠ column count");
  ResidueVector out(rows(), 0);
  for (std::size_t r = 0; r < rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{entries_[r][c]} * (v[c] % p_)) % p_;
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

LinearSolveResult gaussian_solve(const PrimeFieldMatrix& T, const ResidueVector& w) {
  const Residue p = T.modulus();
  if (w.size() != T.rows()) throw Error(ErrorKind::DimensionMismatch, {w.size(), T.rows()}, "rhs length ≠ row count");
  const std::size_t n = T.cols();
  std::vector<ResidueVector> aug;
  for (std::size_t r = 0; r < T.rows(); ++r) {
    auto row = T.entries()[r];
    row.push_back(w[r] % p);
    aug.push_back(std::move(row));
  }
  const auto pivots = rref(aug, p, n);

  LinearSolveResult out;
  bool consistent = true;
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) consistent = consistent && aug[r][n] == 0;
  if (consistent) {
    ResidueVector x(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][n];
    out.particular = std::move(x);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (std::binary_search(pivots.begin(), pivots.end(), f)) continue;
    ResidueVector k(n, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = (p - aug[i][f]) % p;
    out.kernel_basis.push_back(std::move(k));
    out.kernel_size *= p;
  }
  return out;
}

std::size_t rank(const PrimeFieldMatrix& T) {
  auto m = T.entries();
  return rref(m, T.modulus(), T.cols()).size();
}

FiniteGroup vector_group(Residue p, std::size_t n) {
  require_prime(p);
  const auto size = bounded_power(p, n, kSolutionLimit);
  if (!size) throw Error(ErrorKind::TooLarge, {p, n}, "p^n exceeds 4096");
  Table t(*size, std::vector<std::size_t>(*size));
  for (std::size_t a = 0; a < *size; ++a) {
    const auto va = decode_vector(p, n, a);
    for (std::size_t b = 0; b < *size; ++b) t[a][b] = encode_vector(p, add_mod(va, decode_vector(p, n, b), p));
  }
  return build_group(*size, std::move(t));
}

Torsor affine_torsor(Residue p, std::size_t n) {
  require_prime(p);
  if (!bounded_power(p, n, kAffineLimit)) throw Error(ErrorKind::TooLarge, {p, n}, "p^n exceeds 256");
  auto group = vector_group(p, n);
  const auto size = group.order();
  return as_torsor(build_action(group, size, group.cayley()));
}

Torsor solution_torsor(const PrimeFieldMatrix& T, const ResidueVector& w) {
  const Residue p = T.modulus();
  const auto space = bounded_power(p, T.cols(), kSolutionLimit);
  if (!space) throw Error(ErrorKind::TooLarge, {p, T.cols()}, "p^cols exceeds 4096");
  const auto solved = gaussian_solve(T, w);
  if (!solved.particular) throw Error(ErrorKind::EmptySolutionSet, {}, "T·v = w has no solution");

  const ResidueVector zero(T.rows(), 0);
  std::vector<ResidueVector> points, kernel;
  for (std::size_t code = 0; code < *space; ++code) {
    auto v = decode_vector(p, T.cols(), code);
    const auto image = T.apply(v);
    if (image == w) points.push_back(v);
    if (image == zero) kernel.push_back(std::move(v));
  }
  if (kernel.size() != solved.kernel_size || points.size() != solved.kernel_size) {
    throw std::logic_error("row reduction and enumeration disagree on the solution count");
  }

  auto position = [](const std::vector<ResidueVector>& list, const ResidueVector& v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) throw std::logic_error("vector sum left its set");
    return static_cast<std::size_t>(it - list.begin());
  };
  const std::size_t k = kernel.size();
  Table law(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) law[a][b] = position(kernel, add_mod(kernel[a], kernel[b], p));
  auto group = build_group(k, std::move(law));

  Table act(k, std::vector<std::size_t>(points.size()));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t x = 0; x < points.size(); ++x) act[a][x] = position(points, add_mod(kernel[a], points[x], p));
  return as_torsor(build_action(group, points.size(), std::move(act)));
}

std::vector<Element> coset_points(const Subgroup& subgroup, Element g) {
  const auto& parent = subgroup.parent();
  if (g >= parent.order()) throw Error(ErrorKind::ElementOutOfRange, {g}, "coset representative out of range");
  std::vector<Element> pts;
  for (auto h : subgroup.members()) pts.push_back(parent.multiply(g, h));
  std::sort(pts.begin(), pts.end());
  return pts;
}

Torsor coset_torsor(const Subgroup& subgroup, Element g) {
  const auto pts = coset_points(subgroup, g);
  const auto& parent = subgroup.parent();
  Table right(pts.size(), std::vector<std::size_t>(subgroup.order()));
  for (std::size_t x = 0; x < pts.size(); ++x) {
    for (std::size_t h = 0; h < subgroup.order(); ++h) {
      const auto prod = parent.multiply(pts[x], subgroup.members()[h]);
      right[x][h] = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), prod) - pts.begin());
    }
  }
  return as_torsor(right_action_as_left(subgroup.as_group(), pts.size(), right));
}

namespace {

std::vector<std::vector<std::int64_t>> as_int_matrix(const ResidueVector& flat, std::size_t n) {
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = flat[r * n + c];
  return m;
}

ResidueVector mat_vec(const ResidueVector& flat, const ResidueVector& v, Residue p) {
  const std::size_t n = v.size();
  ResidueVector out(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < n; ++c) acc += std::uint64_t{flat[r * n + c]} * v[c];
    out[r] = static_cast<Residue>(acc % p);
  }
  return out;
}

ResidueVector mat_mul(const ResidueVector& a, const ResidueVector& b, std::size_t n, Residue p) {
  ResidueVector out(n * n, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::uint64_t{a[r * n + k]} * b[k * n + c];
      out[r * n + c] = static_cast<Residue>(acc % p);
    }
  return out;
}

std::size_t basis_count(Residue p, std::size_t n) {
  // ∏ (p^n − p^k), saturating just above the limit.
  const auto pn = bounded_power(p, n, kBasisLimit + 1);
  if (!pn) return kBasisLimit + 1;
  std::size_t count = 1, pk = 1;
  for (std::size_t k = 0; k < n; ++k) {
    count *= *pn - pk;
    if (count > kBasisLimit) return kBasisLimit + 1;
    pk *= p;
  }
  return count;
}

void require_basis_size(Residue p, std::size_t n) {
  require_prime(p);
  if (n == 0 || basis_count(p, n) > kBasisLimit) {
    throw Error(ErrorKind::TooLarge, {p, n}, "more than 512 ordered bases");
  }
}

}  // namespace

GeneralLinearGroup general_linear_group(Residue p, std::size_t n) {
  require_basis_size(p, n);
  const std::size_t all = *bounded_power(p, n * n, std::size_t{1} << 40);
  std::vector<std::size_t> codes;
  std::vector<ResidueVector> mats;
  for (std::size_t code = 0; code < all; ++code) {
    auto flat = decode_vector(p, n * n, code);
    if (rank(PrimeFieldMatrix(p, as_int_matrix(flat, n))) == n) {
      codes.push_back(code);
      mats.push_back(std::move(flat));
    }
  }
  const std::size_t order = codes.size();
  Table law(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      const auto prod = encode_vector(p, mat_mul(mats[a], mats[b], n, p));
      law[a][b] = static_cast<std::size_t>(std::lower_bound(codes.begin(), codes.end(), prod) - codes.begin());
    }
  return {p, n, std::move(codes), build_group(order, std::move(law))};
}

std::vector<std::vector<std::size_t>> ordered_bases(Residue p, std::size_t n) {
  require_basis_size(p, n);
  const std::size_t vectors = *bounded_power(p, n, kBasisLimit + 1);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> tuple(n, 0);
  // Odometer over n-tuples of vector codes, first slot most significant.
  while (true) {
    std::vector<std::vector<std::int64_t>> rows;
    for (auto code : tuple) {
      auto v = decode_vector(p, n, code);
      rows.emplace_back(v.begin(), v.end());
    }
    if (rank(PrimeFieldMatrix(p, rows)) == n) out.push_back(tuple);
    std::size_t slot = n;
    while (slot > 0 && ++tuple[slot - 1] == vectors) tuple[--slot] = 0;
    if (slot == 0) break;
  }
  return out;
}

Torsor basis_torsor(Residue p, std::size_t n) {
  const auto gl = general_linear_group(p, n);
  const auto bases = ordered_bases(p, n);
  Table act(gl.group.order(), std::vector<std::size_t>(bases.size()));
  for (std::size_t g = 0; g < gl.group.order(); ++g) {
    const auto mat = decode_vector(p, n * n, gl.matrix_codes[g]);
    for (std::size_t b = 0; b < bases.size(); ++b) {
      std::vector<std::size_t> image;
      for (auto code : bases[b]) image.push_back(encode_vector(p, mat_vec(mat, decode_vector(p, n, code), p)));
      act[g][b] = static_cast<std::size_t>(std::lower_bound(bases.begin(), bases.end(), image) - bases.begin());
    }
  }
  return as_torsor(build_action(gl.group, bases.size(), std::move(act)));
}

}  // namespace torsorkit
