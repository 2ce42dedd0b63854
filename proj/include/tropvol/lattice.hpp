#pragma once

// Exact integral-affine geometry of the simplices
//   sigma = { w in R_+^{p+1} : sum_i b_i w_i = 1 }
// attached to a multiplicity vector b. Everything here is exact; floating
// point never enters.

#include "tropvol/arith.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tropvol {

class ZSimplex {
 public:
  /// Throws std::invalid_argument for an empty vector or a non-positive entry.
  explicit ZSimplex(std::vector<std::int64_t> b);

  const std::vector<std::int64_t>& multiplicities() const { return b_; }
  int dim() const { return static_cast<int>(b_.size()) - 1; }
  /// b_sigma, the gcd of the multiplicities.
  Integer b_sigma() const { return gcd_of(b_); }

 private:
  std::vector<std::int64_t> b_;
};

/// Value at w is sum_i c_i w_i; at the vertex e_i/b_i it is c_i/b_i.
struct AffineFunctionOnSimplex {
  std::vector<Rational> coefficients;

  Rational operator()(std::span<const Rational> w) const;
  Rational at_vertex(const ZSimplex& s, std::size_t i) const;
  Rational min_over_vertices(const ZSimplex& s) const;
};

/// gcd(b) / (p! prod b_i).
Rational simplex_volume(const ZSimplex& s);

/// [T_{sigma',Z} : phi(T_{sigma,Z})] where phi(w)_j = b_j w_j, computed from
/// an explicit kernel basis and its Hermite normal form. Throws on empty b.
Integer lattice_index(std::span<const std::int64_t> b);

/// Constant density of lambda_sigma with respect to |dw_1 ... dw_p| in the
/// chart that eliminates w_0. Equals b_sigma / b_0.
Rational normalized_density_chart(const ZSimplex& s);

/// Euclidean volume of the chart region { w in R_+^p : sum_{i>=1} b_i w_i <= 1 }.
Rational chart_region_volume(const ZSimplex& s);

// ---------------------------------------------------------------------------
// Integer linear algebra used by the oracles above and by base change.

/// Row-major integer matrix.
using IntMatrix = std::vector<std::vector<Integer>>;

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `a`: lower triangular, positive pivots, zero columns dropped.
IntMatrix hermite_normal_form(IntMatrix a);

/// Covolume of the full-rank lattice spanned by the columns of `a` (rows = n).
/// Throws std::invalid_argument if the columns do not span a rank-n lattice.
Integer lattice_covolume(const IntMatrix& a);

/// Unimodular U (n x n) with row * U = (g, 0, ..., 0), g = gcd(row) >= 0,
/// together with U^{-1}. Columns 1..n-1 of U form a basis of the integer kernel.
struct ColumnReduction {
  IntMatrix u;
  IntMatrix u_inverse;
  Integer g;
};
ColumnReduction reduce_row(std::span<const Integer> row);

/// Normalized volume of the p-simplex with the given p+1 vertices, which must
/// lie on a common hyperplane sum_i b_i u_i = const in R^{p+1}. The measure is
/// normalized by the tangent lattice Z^{p+1} cap ker(b).
Rational lattice_simplex_volume(std::span<const std::int64_t> b,
                                const std::vector<std::vector<Rational>>& vertices);

Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace tropvol
