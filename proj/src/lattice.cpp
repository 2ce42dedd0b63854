#include "tropvol/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropvol {

ZSimplex::ZSimplex(std::vector<std::int64_t> b) : b_(std::move(b)) {
  if (b_.empty()) throw std::invalid_argument("ZSimplex: empty multiplicity vector");
  for (auto bi : b_) {
    if (bi < 1) throw std::invalid_argument("ZSimplex: multiplicities must be positive");
  }
}

Rational AffineFunctionOnSimplex::operator()(std::span<const Rational> w) const {
  if (w.size() != coefficients.size()) {
    throw std::invalid_argument("AffineFunctionOnSimplex: dimension mismatch");
  }
  Rational v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) v += coefficients[i] * w[i];
  return v;
}

Rational AffineFunctionOnSimplex::at_vertex(const ZSimplex& s, std::size_t i) const {
  return coefficients.at(i) / Rational(s.multiplicities().at(i));
}

Rational AffineFunctionOnSimplex::min_over_vertices(const ZSimplex& s) const {
  Rational best = at_vertex(s, 0);
  for (std::size_t i = 1; i < coefficients.size(); ++i) best = std::min(best, at_vertex(s, i));
  return best;
}

Rational simplex_volume(const ZSimplex& s) {
  const auto& b = s.multiplicities();
  return Rational(s.b_sigma(), factorial(s.dim()) * product_of(b));
}

Rational normalized_density_chart(const ZSimplex& s) {
  return Rational(s.b_sigma(), Integer(s.multiplicities().front()));
}

Rational chart_region_volume(const ZSimplex& s) {
  const auto& b = s.multiplicities();
  return Rational(Integer(1), factorial(s.dim()) * product_of(std::span(b).subspan(1)));
}

// ---------------------------------------------------------------------------

namespace {

struct Bezout {
  Integer g, x, y;  // g = x a + y b, g >= 0
};

Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Floor division for the reduction step (entries left of a pivot end up in [0, pivot)).
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix a) {
  if (a.empty()) return a;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  auto col_op = [&](std::size_t i, std::size_t j, const Integer& p, const Integer& q,
                    const Integer& r, const Integer& s) {
    // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
    for (std::size_t k = 0; k < rows; ++k) {
      Integer ci = a[k][i], cj = a[k][j];
      a[k][i] = p * ci + q * cj;
      a[k][j] = r * ci + s * cj;
    }
  };

  std::size_t pivot = 0;
  for (std::size_t row = 0; row < rows && pivot < cols; ++row) {
    for (std::size_t j = pivot + 1; j < cols; ++j) {
      if (a[row][j] == 0) continue;
      const Integer ai = a[row][pivot], aj = a[row][j];
      const Bezout e = extended_gcd(ai, aj);
      // Determinant of [[x, -aj/g], [y, ai/g]] is 1.
      col_op(pivot, j, e.x, e.y, -aj / e.g, ai / e.g);
    }
    if (a[row][pivot] == 0) continue;
    if (a[row][pivot] < 0) {
      for (std::size_t k = 0; k < rows; ++k) a[k][pivot] = -a[k][pivot];
    }
    for (std::size_t j = 0; j < pivot; ++j) {
      const Integer q = floor_div(a[row][j], a[row][pivot]);
      if (q == 0) continue;
      for (std::size_t k = 0; k < rows; ++k) a[k][j] -= q * a[k][pivot];
    }
    ++pivot;
  }
  for (auto& r : a) r.resize(pivot);
  return a;
}

Integer lattice_covolume(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  const IntMatrix h = hermite_normal_form(a);
  if (h.front().size() != n) throw std::invalid_argument("lattice_covolume: lattice is not full rank");
  Integer det = 1;
  // Pivots of a full-rank lower-triangular HNF sit on the diagonal.
  for (std::size_t i = 0; i < n; ++i) det *= h[i][i];
  return det;
}

ColumnReduction reduce_row(std::span<const Integer> row) {
  const std::size_t n = row.size();
  std::vector<Integer> r(row.begin(), row.end());
  IntMatrix u = identity(n);
  IntMatrix uinv = identity(n);
  for (std::size_t j = 1; j < n; ++j) {
    if (r[j] == 0) continue;
    const Bezout e = extended_gcd(r[0], r[j]);
    const Integer p = e.x, q = -r[j] / e.g, s_r = e.y, s = r[0] / e.g;
    // Columns (0, j) of U get multiplied on the right by M = [[p, q], [s_r, s]], det M = 1.
    for (std::size_t k = 0; k < n; ++k) {
      Integer c0 = u[k][0], cj = u[k][j];
      u[k][0] = p * c0 + s_r * cj;
      u[k][j] = q * c0 + s * cj;
    }
    // Rows (0, j) of U^{-1} get multiplied on the left by M^{-1} = [[s, -q], [-s_r, p]].
    for (std::size_t k = 0; k < n; ++k) {
      Integer r0 = uinv[0][k], rj = uinv[j][k];
      uinv[0][k] = s * r0 - q * rj;
      uinv[j][k] = -s_r * r0 + p * rj;
    }
    r[0] = e.g;
    r[j] = 0;
  }
  if (r[0] < 0) {
    for (std::size_t k = 0; k < n; ++k) {
      u[k][0] = -u[k][0];
      uinv[0][k] = -uinv[0][k];
    }
    r[0] = -r[0];
  }
  return {std::move(u), std::move(uinv), r[0]};
}

Integer lattice_index(std::span<const std::int64_t> b) {
  if (b.empty()) throw std::invalid_argument("lattice_index: empty multiplicity vector");
  const std::size_t n = b.size();
  if (n == 1) return 1;
  std::vector<Integer> row(b.begin(), b.end());
  const ColumnReduction red = reduce_row(row);

  // phi(kernel basis vector u) = (b_j u_j); coordinates in the basis
  // (e_i - e_0)_{i>=1} of ker(sum) are its entries 1..p.
  IntMatrix image(n - 1, std::vector<Integer>(n - 1));
  for (std::size_t col = 1; col < n; ++col) {
    for (std::size_t i = 1; i < n; ++i) image[i - 1][col - 1] = Integer(b[i]) * red.u[i][col];
  }
  return lattice_covolume(image);
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Rational lattice_simplex_volume(std::span<const std::int64_t> b,
                                const std::vector<std::vector<Rational>>& vertices) {
  const std::size_t n = b.size();
  if (vertices.size() != n) {
    throw std::invalid_argument("lattice_simplex_volume: need p+1 vertices for a p-simplex in R^{p+1}");
  }
  for (const auto& v : vertices) {
    if (v.size() != n) throw std::invalid_argument("lattice_simplex_volume: vertex dimension mismatch");
  }
  if (n == 1) return 1;
  std::vector<Integer> row(b.begin(), b.end());
  const ColumnReduction red = reduce_row(row);

  // Edge e lies in ker(b); its coordinates in the kernel basis (columns 1..p
  // of U) are entries 1..p of U^{-1} e.
  std::vector<std::vector<Rational>> coords(n - 1, std::vector<Rational>(n - 1));
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Rational> edge(n);
    Rational level = 0;
    for (std::size_t i = 0; i < n; ++i) {
      edge[i] = vertices[k][i] - vertices[0][i];
      level += Rational(b[i]) * edge[i];
    }
    if (level != 0) throw std::invalid_argument("lattice_simplex_volume: vertices not on a common level set");
    for (std::size_t r = 1; r < n; ++r) {
      Rational c = 0;
      for (std::size_t i = 0; i < n; ++i) c += Rational(red.u_inverse[r][i]) * edge[i];
      coords[r - 1][k - 1] = c;
    }
  }
  Rational det = determinant(std::move(coords));
  if (det < 0) det = -det;
  return det / Rational(factorial(static_cast<int>(n) - 1));
}

}  // namespace tropvol
