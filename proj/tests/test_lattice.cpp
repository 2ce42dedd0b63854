#include "doctest.h"

#include "tropvol/lattice.hpp"

#include <algorithm>
#include <functional>

using namespace tropvol;

namespace {

// All multiplicity vectors with entries in [1, max_entry] and length in [1, max_len].
void for_each_vector(int max_entry, int max_len,
                     const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::int64_t> b(len, 1);
    while (true) {
      fn(b);
      int k = 0;
      while (k < len && b[k] == max_entry) b[k++] = 1;
      if (k == len) break;
      ++b[k];
    }
  }
}

Rational R(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("simplex_volume on the documented multiplicity vectors") {
  CHECK(simplex_volume(ZSimplex({1, 1})) == R(1));
  CHECK(simplex_volume(ZSimplex({2, 3})) == R(1, 6));
  CHECK(simplex_volume(ZSimplex({2, 2})) == R(1, 2));
  CHECK(simplex_volume(ZSimplex({6, 10, 15})) == R(1, 1800));
  CHECK(simplex_volume(ZSimplex({5})) == R(1));
}

TEST_CASE("ZSimplex rejects empty and non-positive multiplicities") {
  CHECK_THROWS_AS(ZSimplex({}), std::invalid_argument);
  CHECK_THROWS_AS(ZSimplex({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ZSimplex({-2}), std::invalid_argument);
  CHECK_THROWS_AS(lattice_index(std::vector<std::int64_t>{}), std::invalid_argument);
}

TEST_CASE("lattice_index from the normal form") {
  CHECK(lattice_index(std::vector<std::int64_t>{1, 1}) == 1);
  CHECK(lattice_index(std::vector<std::int64_t>{2, 3}) == 6);
  // prod = 16, gcd = 2.
  CHECK(lattice_index(std::vector<std::int64_t>{2, 2, 4}) == 8);
  CHECK(lattice_index(std::vector<std::int64_t>{7}) == 1);
}

TEST_CASE("volume times index is 1/p! exhaustively") {
  int count = 0;
  for_each_vector(6, 4, [&](const std::vector<std::int64_t>& b) {
    const ZSimplex s(b);
    const Rational lhs = simplex_volume(s) * Rational(lattice_index(b));
    REQUIRE(lhs == Rational(Integer(1), factorial(s.dim())));
    ++count;
  });
  CHECK(count == 6 + 36 + 216 + 1296);
}

TEST_CASE("simplex_volume is permutation invariant") {
  for_each_vector(5, 3, [](const std::vector<std::int64_t>& b) {
    auto perm = b;
    std::sort(perm.begin(), perm.end());
    const Rational v = simplex_volume(ZSimplex(b));
    do {
      REQUIRE(simplex_volume(ZSimplex(perm)) == v);
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
}

TEST_CASE("chart density reproduces the volume") {
  CHECK(normalized_density_chart(ZSimplex({1, 1})) == R(1));
  CHECK(normalized_density_chart(ZSimplex({1, 2})) == R(1));
  CHECK(chart_region_volume(ZSimplex({1, 2})) == R(1, 2));
  // b=(2,1): chart w_1 in [0,1], lattice length of the edge is 1/2.
  CHECK(normalized_density_chart(ZSimplex({2, 1})) == R(1, 2));
  CHECK(normalized_density_chart(ZSimplex({2, 2})) == R(1));

  for_each_vector(6, 4, [](const std::vector<std::int64_t>& b) {
    const ZSimplex s(b);
    REQUIRE(normalized_density_chart(s) * chart_region_volume(s) == simplex_volume(s));
  });
}

TEST_CASE("lattice_simplex_volume agrees with the closed formula") {
  for_each_vector(5, 4, [](const std::vector<std::int64_t>& b) {
    const std::size_t n = b.size();
    std::vector<std::vector<Rational>> verts(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) verts[i][i] = Rational(1, b[i]);
    REQUIRE(lattice_simplex_volume(b, verts) == simplex_volume(ZSimplex(b)));
  });
}

TEST_CASE("hermite normal form") {
  IntMatrix a = {{2, 4, 6}, {1, 3, 5}};
  const IntMatrix h = hermite_normal_form(a);
  REQUIRE(h.size() == 2);
  REQUIRE(h[0].size() == 2);
  CHECK(h[0][1] == 0);
  CHECK(h[0][0] * h[1][1] == 2);
  CHECK(lattice_covolume({{3, 0}, {0, 5}}) == 15);
  CHECK_THROWS_AS(lattice_covolume({{1, 2}, {2, 4}}), std::invalid_argument);
}

TEST_CASE("reduce_row produces a unimodular kernel basis") {
  std::vector<Integer> row = {6, 10, 15};
  const ColumnReduction red = reduce_row(row);
  CHECK(red.g == 1);
  for (std::size_t c = 0; c < 3; ++c) {
    Integer dot = 0;
    for (std::size_t i = 0; i < 3; ++i) dot += row[i] * red.u[i][c];
    CHECK(dot == (c == 0 ? Integer(1) : Integer(0)));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Integer v = 0;
      for (std::size_t k = 0; k < 3; ++k) v += red.u[i][k] * red.u_inverse[k][j];
      CHECK(v == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("affine functions evaluate at vertices as c_i / b_i") {
  const ZSimplex s({1, 2});
  AffineFunctionOnSimplex f{{R(1), R(0)}};
  CHECK(f.at_vertex(s, 0) == R(1));
  CHECK(f.at_vertex(s, 1) == R(0));
  std::vector<Rational> w = {R(1, 3), R(1, 3)};
  CHECK(f(w) == R(1, 3));
  CHECK(f.min_over_vertices(s) == R(0));
}
