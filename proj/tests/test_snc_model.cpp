#include "doctest.h"

#include "tropvol/model_spec.hpp"
#include "tropvol/snc_model.hpp"

#include <random>

using namespace tropvol;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

WeightedSncModel two_vertex_edge() {
  return WeightedSncModel({{"E0", 1, 0}, {"E1", 2, 1}}, {{{"E0", "E1"}, 1}});
}

// Random model on up to 5 components: a random downward-closed set of
// strata with counts 1, random b in [1,4], a in [-2,2] with denominators <= 3.
WeightedSncModel random_model(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<Component> comps;
  for (int i = 0; i < n; ++i) {
    const auto b = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
    const long num = std::uniform_int_distribution<long>(-6, 6)(rng);
    const long den = std::uniform_int_distribution<long>(1, 3)(rng);
    comps.push_back({"E" + std::to_string(i), b, R(num, den)});
  }
  // Take the simplices spanned by random vertex sets, closed downward.
  std::set<std::uint32_t> masks;
  const int tops = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int k = 0; k < tops; ++k) {
    const std::uint32_t top = std::uniform_int_distribution<std::uint32_t>(1, (1u << n) - 1)(rng);
    for (std::uint32_t sub = top; sub; sub = (sub - 1) & top) masks.insert(sub);
  }
  std::vector<Stratum> strata;
  for (auto mask : masks) {
    if (std::popcount(mask) < 2) continue;
    Stratum s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.components.push_back(comps[static_cast<std::size_t>(i)].name);
    }
    strata.push_back(std::move(s));
  }
  return WeightedSncModel(comps, strata);
}

std::map<std::string, Rational> a_coefficients(const WeightedSncModel& m) {
  std::map<std::string, Rational> c;
  for (const auto& comp : m.components()) c[comp.name] = comp.a;
  return c;
}

}  // namespace

TEST_CASE("dual complex of the coordinate pencil is a circle") {
  const auto m = presets::coordinate_pencil(2);
  const auto dc = build_dual_complex(m);
  CHECK(dc.faces_of_dim(0).size() == 3);
  CHECK(dc.faces_of_dim(1).size() == 3);
  CHECK(dc.max_dim() == 1);
  CHECK(dc.euler_characteristic() == 0);
  for (int e : dc.faces_of_dim(1)) CHECK(dc.facets_of(e).size() == 2);
}

TEST_CASE("coordinate pencil in higher dimension is the boundary of a simplex") {
  for (int n = 1; n <= 4; ++n) {
    const auto dc = build_dual_complex(presets::coordinate_pencil(n));
    CHECK(dc.max_dim() == n - 1);
    // chi(S^{n-1}) = 1 + (-1)^{n-1}
    CHECK(dc.euler_characteristic() == 1 + ((n - 1) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("single component and parallel edges") {
  const auto single = build_dual_complex(presets::fermat_smooth());
  CHECK(single.size() == 1);
  CHECK(single.euler_characteristic() == 1);

  const WeightedSncModel twice({{"E0", 1, 0}, {"E1", 1, 0}}, {{{"E0", "E1"}, 2}});
  const auto dc = build_dual_complex(twice);
  CHECK(dc.faces_of_dim(0).size() == 2);
  const auto edges = dc.faces_of_dim(1);
  REQUIRE(edges.size() == 2);
  CHECK(dc.face(edges[0]).vertices == dc.face(edges[1]).vertices);
  CHECK(dc.face(edges[0]).label != dc.face(edges[1]).label);
  CHECK(dc.euler_characteristic() == 0);
  CHECK_FALSE(dc.contains(edges[0], edges[1]));
  CHECK(dc.contains(edges[0], 0));
  CHECK(dc.contains(edges[1], 1));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(WeightedSncModel({}, {}), ModelError);
  CHECK_THROWS_AS(WeightedSncModel({{"E0", 0, 0}}, {}), ModelError);
  CHECK_THROWS_AS(WeightedSncModel({{"E0", 1, 0}, {"E0", 1, 0}}, {}), ModelError);
  CHECK_THROWS_AS(WeightedSncModel({{"E0", 1, 0}}, {{{"E1"}, 1}}), ModelError);
  CHECK_THROWS_AS(WeightedSncModel({{"E0", 1, 0}}, {{{"E0"}, 2}}), ModelError);
  // Triple point without one of its edges.
  CHECK_THROWS_AS(WeightedSncModel({{"A", 1, 0}, {"B", 1, 0}, {"C", 1, 0}},
                                   {{{"A", "B"}, 1}, {{"B", "C"}, 1}, {{"A", "B", "C"}, 1}}),
                  ModelError);
  // Two triple points inside a single curve with two components: ambiguous.
  CHECK_THROWS_AS(WeightedSncModel({{"A", 1, 0}, {"B", 1, 0}, {"C", 1, 0}},
                                   {{{"A", "B"}, 2}, {{"B", "C"}, 1}, {{"A", "C"}, 1}, {{"A", "B", "C"}, 3}}),
                  ModelError);
  CHECK_THROWS_AS(WeightedSncModel({{"E0", 1, 0}}, {}, {{"D", 1}}), ModelError);
  CHECK_NOTHROW(WeightedSncModel({{"E0", 1, 0}}, {}, {{"D", R(-3)}}));
}

TEST_CASE("weight data") {
  const auto m = two_vertex_edge();
  const auto dc = build_dual_complex(m);
  const auto wd = weight_data(m, dc);
  CHECK(wd.kappa == std::vector<Rational>{R(0), R(1, 2)});
  CHECK(wd.kappa_min == 0);
  CHECK(wd.d == 0);
  REQUIRE(wd.active_faces.size() == 1);
  CHECK(dc.face(wd.active_faces[0]).vertices == std::vector<int>{0});

  const auto pencil = presets::coordinate_pencil(2);
  const auto pw = weight_data(pencil);
  CHECK(pw.kappa_min == 0);
  CHECK(pw.active_faces.size() == build_dual_complex(pencil).size());
  CHECK(pw.d == 1);
}

TEST_CASE("shifting a by multiples of b moves kappa_min only") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_model(rng);
    const Rational shift = R(std::uniform_int_distribution<long>(-5, 5)(rng), 4);
    const auto w0 = weight_data(m);
    const auto w1 = weight_data(m.shifted(shift));
    CHECK(w1.kappa_min == w0.kappa_min + shift);
    CHECK(w1.active_faces == w0.active_faces);
    CHECK(w1.d == w0.d);
  }
}

TEST_CASE("evaluate divisor on faces") {
  const auto pencil = presets::coordinate_pencil(2);
  const auto dc = build_dual_complex(pencil);
  std::map<std::string, Rational> fiber;
  for (const auto& c : pencil.components()) fiber[c.name] = Rational(c.b);
  for (std::size_t f = 0; f < dc.size(); ++f) {
    const auto fn = evaluate_divisor_on_face(pencil, fiber, dc, static_cast<int>(f));
    for (std::size_t v = 0; v < fn.coefficients.size(); ++v) CHECK(fn.at_vertex(dc.face(static_cast<int>(f)).simplex, v) == 1);
  }

  const WeightedSncModel edge({{"E0", 1, 0}, {"E1", 2, 0}}, {{{"E0", "E1"}, 1}});
  const auto edc = build_dual_complex(edge);
  const int e = edc.faces_of_dim(1).front();
  const auto fn = evaluate_divisor_on_face(edge, {{"E0", 1}, {"E1", 0}}, edc, e);
  const std::vector<Rational> w{R(1, 3), R(1, 3)};
  CHECK(fn(w) == R(1, 3));
  CHECK(fn.at_vertex(edc.face(e).simplex, 0) == 1);
  CHECK(fn.at_vertex(edc.face(e).simplex, 1) == 0);
  CHECK_THROWS_AS(evaluate_divisor_on_face(edge, {{"E0", 1}}, edc, e), ModelError);
  CHECK_THROWS_AS(evaluate_divisor_on_face(edge, {{"E0", 1}}, edc, 99), ModelError);
}

TEST_CASE("K - L attains kappa_min exactly on the active subcomplex") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_model(rng);
    const auto dc = build_dual_complex(m);
    const auto wd = weight_data(m, dc);
    const auto coeffs = a_coefficients(m);
    for (std::size_t f = 0; f < dc.size(); ++f) {
      const int fi = static_cast<int>(f);
      const auto fn = evaluate_divisor_on_face(m, coeffs, dc, fi);
      const auto& s = dc.face(fi).simplex;
      Rational lo = fn.min_over_vertices(s), hi = lo;
      for (std::size_t v = 0; v < fn.coefficients.size(); ++v) hi = std::max(hi, fn.at_vertex(s, v));
      CHECK(lo >= wd.kappa_min);
      if (wd.is_active(fi)) {
        CHECK(lo == wd.kappa_min);
        CHECK(hi == wd.kappa_min);
      } else {
        CHECK(hi > wd.kappa_min);
      }
    }
  }
}

TEST_CASE("boundary coefficients") {
  const auto m = two_vertex_edge();
  const auto dc = build_dual_complex(m);
  const auto wd = weight_data(m, dc);
  CHECK(boundary_coefficients(m, dc, wd, 0) == std::map<std::string, Rational>{{"E1", R(0)}});

  const WeightedSncModel half({{"E0", 1, 0}, {"E1", 1, R(1, 2)}}, {{{"E0", "E1"}, 1}}, {{"D", R(1, 3)}});
  const auto hdc = build_dual_complex(half);
  const auto hw = weight_data(half, hdc);
  const auto bc = boundary_coefficients(half, hdc, hw, 0);
  CHECK(bc.at("E1") == R(1, 2));
  CHECK(bc.at("D") == R(1, 3));
  CHECK(is_subklt(bc));
  CHECK_THROWS_AS(boundary_coefficients(half, hdc, hw, 1), ModelError);
}

TEST_CASE("maximal active faces have subklt boundaries") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = random_model(rng);
    const auto dc = build_dual_complex(m);
    const auto wd = weight_data(m, dc);
    for (int f : wd.active_faces) {
      const auto& up = dc.cofacets_of(f);
      const bool maximal = std::none_of(up.begin(), up.end(), [&](int g) { return wd.is_active(g); });
      const auto bc = boundary_coefficients(m, dc, wd, f);
      if (maximal) CHECK(is_subklt(bc));
      // An active neighbour contributes coefficient exactly 1.
      if (!maximal) CHECK_FALSE(is_subklt(bc));
    }
  }
}

TEST_CASE("subklt predicate") {
  CHECK(is_subklt({}));
  CHECK(is_subklt({{"a", 0}, {"b", 0}}));
  CHECK_FALSE(is_subklt({{"a", 1}}));
  CHECK(is_subklt({{"a", R(1, 2)}, {"b", R(-3)}}));
}

TEST_CASE("model spec round trip") {
  const char* text = R"(# two curves meeting twice
[components]
E0 b=1 a=0
E1 b=2 a=1/2   # trailing comment

[strata]
E0 E1 count=2
[pairs]
D c=1/3
[residue_anchor]
E0 E1 label=1 rho=2.5
)";
  const auto spec = parse_model_spec(text);
  CHECK(spec.model.size() == 2);
  CHECK(spec.model.components()[1].a == R(1, 2));
  CHECK(spec.model.count({0, 1}) == 2);
  REQUIRE(spec.anchor);
  CHECK(spec.anchor->label == 1);
  CHECK(spec.anchor->rho == 2.5);
  const auto again = parse_model_spec(format_model_spec(spec.model));
  CHECK(again.model.strata() == spec.model.strata());
  CHECK(again.model.pairs().size() == 1);
}

TEST_CASE("model spec errors cite line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_model_spec(text);
    } catch (const ModelSpecError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("E0 b=1") == 1);
  CHECK(line_of("[components]\nE0 b=x") == 2);
  CHECK(line_of("[components]\nE0 b=1\n[strata]\nE0 E9") == 4);
  CHECK(line_of("[components]\nE0 b=1\n\n[weird]") == 4);
  CHECK(line_of("[components]\nE0 b=1 q=2") == 2);
  CHECK(line_of("[components]\nE0 b=0") == 2);
  CHECK(line_of("[components]\nA b=1\nB b=1\nC b=1\n[strata]\nA B\nA B C") == 7);
  CHECK(line_of("[components]\nE0 b=1\n[pairs]\nD c=1") == 4);
  try {
    parse_model_spec("[components]\nE0 b=1\nE0 b=2");
    FAIL("expected an error");
  } catch (const ModelSpecError& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
}

TEST_CASE("presets") {
  CHECK(presets::by_name("annulus").count({0, 1}) == 1);
  CHECK(presets::by_name("coordinate_pencil", 3).size() == 4);
  CHECK_THROWS_AS(presets::by_name("nope"), ModelError);
  CHECK_THROWS_AS(presets::coordinate_pencil(0), ModelError);
}
