// Acceptance criteria 1-10, one PASS/FAIL line each. Exit status is the
// number of failed criteria.

#include "tropvol/base_change.hpp"
#include "tropvol/chart_sampler.hpp"
#include "tropvol/cy_skeleton.hpp"
#include "tropvol/fit.hpp"
#include "tropvol/hybrid.hpp"
#include "tropvol/pencil.hpp"
#include "tropvol/polar.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

using namespace tropvol;

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::uint64_t seed = 20240611;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void for_each_vector(std::int64_t max_entry, std::size_t max_len,
                     const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::int64_t> b(len, 1);
    while (true) {
      fn(b);
      std::size_t i = 0;
      while (i < len && b[i] == max_entry) b[i++] = 1;
      if (i == len) break;
      ++b[i];
    }
  }
}

LocalChart chart(std::vector<std::int64_t> b, std::vector<Rational> a, double t) {
  LocalChart lc;
  lc.chart.b = std::move(b);
  lc.chart.a = std::move(a);
  lc.t = t;
  return lc;
}

const std::vector<double> schedule{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

// 1. Vol(sigma) [T : phi(T)] = 1/p! for entries <= 6, length <= 4, under 1 s.
void criterion_1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  int count = 0, bad = 0;
  for_each_vector(6, 4, [&](const std::vector<std::int64_t>& b) {
    const ZSimplex s(b);
    bad += simplex_volume(s) != Rational(Integer(1), factorial(s.dim()) * lattice_index(b));
    ++count;
  });
  const double secs = seconds_since(start);
  o.note << count << " vectors, " << bad << " mismatches, " << secs << " s";
  o.require(count == 1554 && bad == 0, "exact identity");
  o.require(secs < 1.0, "runtime < 1 s");
}

// 2. Annulus: mass 1 within 3 sigma, fit d = 1, kappa = 0 +- 0.01, c = 2pi +- 2%.
void criterion_2(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<MassObservation> obs;
  double worst = 0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto lc = chart({1, 1}, {0, 0}, schedule[k]);
    const auto est = sample_fiber_measure(lc, 100000, seed + k).total();
    o.require(est.within(1.0), "mass at t=" + std::to_string(schedule[k]));
    worst = std::max(worst, std::abs(est.value - 1));
    obs.push_back({schedule[k], est.value * lc.nu_scale(), est.stderr_ * lc.nu_scale()});
  }
  const auto fit = fit_mass_asymptotics(obs);
  const double secs = seconds_since(start);
  o.note << "max |mass-1| " << worst << ", d " << fit.d_hat << ", kappa " << fit.kappa_min_hat << ", c/2pi "
         << fit.c_hat / (2 * pi) << ", " << secs << " s";
  o.require(fit.d_hat == 1 && fit.d_confident, "d = 1");
  o.require(std::abs(fit.kappa_min_hat) <= 0.01, "kappa");
  o.require(std::abs(fit.c_hat / (2 * pi) - 1) <= 0.02, "c");
  o.require(secs < 60, "runtime < 1 min");
}

// 3. Chart b=(1,1), a=(0,1): mass -> pi within 2% at 1e-6, closed form pi, d = 0.
void criterion_3(Outcome& o) {
  const auto base = chart({1, 1}, {0, 1}, 1e-6);
  const double closed = residual_mass_closed_form(base.chart);
  const auto est = sample_fiber_measure(base, 100000, seed).total();
  std::vector<MassObservation> obs;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    auto lc = base;
    lc.t = schedule[k];
    const auto e = sample_fiber_measure(lc, 100000, seed + 10 + k).total();
    obs.push_back({schedule[k], e.value * lc.nu_scale(), e.stderr_ * lc.nu_scale()});
  }
  const auto fit = fit_mass_asymptotics(obs);
  o.note << "mass/pi " << est.value / pi << ", closed form - pi " << closed - pi << ", d " << fit.d_hat;
  o.require(std::abs(est.value / pi - 1) <= 0.02, "mass within 2%");
  o.require(std::abs(closed - pi) <= 4 * std::numeric_limits<double>::epsilon() * pi, "closed form");
  o.require(fit.d_hat == 0 && fit.d_confident, "d = 0");
}

// 4. Chart b=(1,2): histogram mass 1/2 +- 3 sigma, KS < 0.02 against uniform w_1 on [0, 1/2].
void criterion_4(Outcome& o) {
  const auto lc = chart({1, 2}, {0, 0}, 1e-6);
  const auto samples = sample_fiber_measure(lc, 1000000, seed);
  const auto h = make_histogram(lc, samples, 20);
  const double ks = face_coordinate_ks(lc, samples, 1, [](double x) { return std::clamp(2 * x, 0.0, 1.0); });
  o.note << "mass " << h.total.value << " +- " << h.total.stderr_ << ", KS " << ks;
  o.require(h.total.within(0.5), "mass");
  o.require(ks < 0.02, "KS");
}

// 5. kappa_0 = 1/2: mass |t|^{-1} bounded. Exact mass 2pi(|t| - |t|^2), so the bound is 2pi.
void criterion_5(Outcome& o) {
  auto lc = chart({1, 1}, {Rational(1, 2), 1}, 1e-2);
  lc.kappa_ref = Rational(0);
  lc.d_ref = 0;
  double sup = 0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    lc.t = schedule[k];
    const auto est = sample_fiber_measure(lc, 100000, seed + k).total();
    const double ratio = est.value / schedule[k];
    sup = std::max(sup, ratio);
    o.require(ratio <= 2 * pi + 3 * est.stderr_ / schedule[k], "bounded at t=" + std::to_string(schedule[k]));
  }
  o.note << "sup mass/|t| " << sup << " (bound 2pi = " << 2 * pi << ")";
}

// 6. Polar decompositions: 10 random functions, relative discrepancy < 1% at N = 1e6; p=0, b=3 exact.
void criterion_6(Outcome& o) {
  Rng rng(seed);
  double worst = 0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const std::size_t p = 1 + rng.below(2);
    std::vector<std::int64_t> b;
    for (std::size_t i = 0; i <= p; ++i) b.push_back(1 + static_cast<std::int64_t>(rng.below(3)));
    const auto f = random_trig_test_function(b, rng);
    const double s = 0.65 * static_cast<double>(std::accumulate(b.begin(), b.end(), std::int64_t{0}));
    const auto torus = torus_decomposition_check(f, 1000000, seed + 100 + k);
    const auto fiber = polar_decomposition_check(b, f, s, 1.0, 1000000, seed + 200 + k);
    worst = std::max({worst, torus.discrepancy(), fiber.discrepancy()});
  }
  o.require(worst < 0.01, "discrepancy < 1%");
  const std::complex<double> t = std::polar(1e-3, 0.7);
  const auto pts = point_fiber(3, t);
  bool exact = pts.size() == 3;
  for (const auto& pt : pts) exact = exact && pt.mass == 1.0 / 9 && std::abs(pt.z * pt.z * pt.z - t) < 1e-15;
  o.require(exact, "p=0, b=3 points of mass 1/9");
  o.note << "max relative discrepancy " << worst << ", p=0 b=3 " << (exact ? "exact" : "wrong");
}

// 7. efg = m and p_* mu' = m^d mu exactly for entries <= 4, length <= 3, m <= 6, under 1 s.
void criterion_7(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  int cases = 0, bad = 0;
  for_each_vector(4, 3, [&](const std::vector<std::int64_t>& b) {
    std::vector<Component> comps;
    for (std::size_t i = 0; i < b.size(); ++i) comps.push_back({"E" + std::to_string(i), b[i], 0});
    std::vector<Stratum> strata;
    for (std::uint32_t mask = 1; mask < (1u << b.size()); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Stratum st;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (mask & (1u << i)) st.components.push_back(comps[i].name);
      }
      strata.push_back(st);
    }
    const auto mu = assemble_limit_measure(WeightedSncModel(comps, strata), 1.0);
    const auto& top = mu.entries.front();
    for (std::int64_t m = 1; m <= 6; ++m) {
      const std::int64_t fg = std::gcd(m, static_cast<std::int64_t>(std::reduce(b.begin(), b.end(), std::int64_t{0},
                                                                                  [](auto x, auto y) { return std::gcd(x, y); })));
      for (std::int64_t g = 1; g <= fg; ++g) {
        if (fg % g != 0) continue;
        const auto r = face_base_change(b, m, g);
        bad += r.e * r.f * r.g != Integer(m);
        const auto check = pushforward_identity_check(mu, m, {{top.face, g}});
        // Independent bookkeeping: g faces, each f gcd^-2 R b'^-1 m^d Vol, against m^d R b^-1 Vol.
        const Rational lhs = Rational(r.g * r.f) * Rational(Integer(1), Integer(fg * fg)) * Rational(Integer(1), r.b_prime);
        const Rational rhs = Rational(Integer(1), gcd_of(b));
        bad += !check.pass || lhs != rhs;
        ++cases;
      }
    }
  });
  const double secs = seconds_since(start);
  o.note << cases << " cases, " << bad << " failures, " << secs << " s";
  o.require(bad == 0, "exact identities");
  o.require(secs < 1.0, "runtime < 1 s");
}

// 8. coordinate_pencil(2), t = 1e-5, N = 1e6: pairwise 3 sigma, KS < 0.02, constant residues.
void criterion_8(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto pencil = HypersurfacePencil::coordinate_pencil(2);
  const auto s = sample_pencil(pencil, 1e-5, 1000000, seed);
  double zmax = 0, ksmax = 0;
  for (std::size_t a = 0; a < s.faces.size(); ++a) {
    ksmax = std::max(ksmax, s.faces[a].ks);
    for (std::size_t b = a + 1; b < s.faces.size(); ++b) zmax = std::max(zmax, s.pair_z(a, b));
  }
  const auto model = pencil.model();
  const auto sk = skeleton_of(model, build_dual_complex(model));
  const auto res = residue_chain_propagate(sk, 1, 2.5);
  const bool constant = res.size() == 3 && std::all_of(res.begin(), res.end(), [](double r) { return r == 2.5; });
  const double secs = seconds_since(start);
  o.note << "edges " << s.faces.size() << ", max pair z " << zmax << ", max KS " << ksmax << ", residues "
         << (constant ? "constant" : "not constant") << ", " << secs << " s";
  o.require(s.faces.size() == 3 && zmax <= 3, "pairwise agreement");
  o.require(ksmax < 0.02, "uniformity");
  o.require(constant, "residue propagation");
  o.require(secs < 300, "runtime < 5 min");
}

// 9. Hybrid topology.
void criterion_9(Outcome& o) {
  for (double zeta : {0.5, 1.0, 2.0}) {
    const BidiscSequence seq{[zeta](double x) { return std::pair{-x, -zeta * x}; }};
    o.require(hybrid_converges(seq, zeta / (1 + zeta)) && !hybrid_converges(seq, zeta / (1 + zeta) + 0.01) &&
                  converges_by_basis(seq, zeta),
              "E301 zeta=" + std::to_string(zeta));
  }
  Rng rng(seed);
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double alpha = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 3);
    const double beta = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 3);
    const double c0 = std::log(rng.uniform(0.1, 0.9)), c1 = std::log(rng.uniform(0.1, 0.9));
    const double g0 = rng.uniform(-2, 2), g1 = rng.uniform(-2, 2);
    const BidiscSequence seq{[=](double x) {
      return std::pair{c0 - alpha * x + g0 * std::log(x) * (alpha > 0), c1 - beta * x + g1 * std::log(x) * (beta > 0)};
    }};
    double zeta = rng.uniform(0.1, 4);
    if (alpha > 0 && beta > 0) {
      zeta = beta / alpha;
      if (rng.uniform() < 0.5) zeta *= rng.uniform() < 0.5 ? rng.uniform(0.5, 0.999) : rng.uniform(1.001, 2);
    }
    agree += hybrid_converges(seq, zeta / (1 + zeta)) == converges_by_basis(seq, zeta);
  }
  o.require(agree == 1000, "random sequences");
  double mult = 0, circle = 0;
  auto poly = [&] {
    std::map<int, Complex> c;
    const int lo = static_cast<int>(rng.below(7)) - 3;
    const int len = 1 + static_cast<int>(rng.below(4));
    for (int e = lo; e < lo + len; ++e) c[e] = std::polar(rng.uniform(0.2, 3), rng.uniform(0, 2 * pi));
    return LaurentPolynomial(std::move(c));
  };
  for (int k = 0; k < 2000; ++k) {
    const auto f = poly(), g = poly();
    const double r = rng.uniform(0.05, 0.95);
    const Complex z = std::polar(r * std::exp(-rng.uniform(0, 20)), rng.uniform(0, 2 * pi));
    const double prod = hybrid_seminorm(f, z, r) * hybrid_seminorm(g, z, r);
    mult = std::max(mult, std::abs(hybrid_seminorm(f * g, z, r) - prod) / prod);
    circle = std::max(circle, std::abs(hybrid_seminorm(LaurentPolynomial::monomial(1), z, r) - r) / r);
  }
  o.require(mult <= 1e-12, "multiplicativity");
  o.require(circle <= 1e-12, "|t| = r");
  o.note << "random agreement " << agree << "/1000, multiplicativity " << mult << ", |t|/r - 1 " << circle;
}

// 10. Non-semistable skeleton: unequal b_sigma gives a non-uniform limit measure.
void criterion_10(Outcome& o) {
  auto cycle = [](std::int64_t b0, std::int64_t b1, std::int64_t b2) {
    return WeightedSncModel({{"E0", b0, 0}, {"E1", b1, 0}, {"E2", b2, 0}},
                            {{{"E0", "E1"}, 1}, {{"E0", "E2"}, 1}, {{"E1", "E2"}, 1}});
  };
  const auto bad = cycle(2, 2, 1);
  const auto dc = build_dual_complex(bad);
  const auto sk = skeleton_of(bad, dc);
  const auto mu = measure_from_residues(bad, dc, sk, std::vector<double>(sk.cells.size(), 1.0));
  std::vector<double> density;
  for (const auto& e : mu.entries) density.push_back(e.residual_mass / to_double(Rational(e.b_sigma)));
  std::sort(density.begin(), density.end());
  o.require(!is_uniform(mu) && density.front() < density.back(), "non-uniform");
  const auto good = cycle(1, 1, 1);
  const auto gdc = build_dual_complex(good);
  const auto gsk = skeleton_of(good, gdc);
  o.require(is_uniform(measure_from_residues(good, gdc, gsk, residue_chain_propagate(gsk, 0, 1.0))), "semistable control");
  o.note << "densities " << density.front() << " .. " << density.back();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria{
      {"simplex volume identity", criterion_1},  {"annulus mass and fit", criterion_2},
      {"monomial chart mass", criterion_3},      {"pushforward convergence", criterion_4},
      {"decay regime", criterion_5},             {"polar decompositions", criterion_6},
      {"base change", criterion_7},              {"coordinate pencil uniformity", criterion_8},
      {"hybrid topology", criterion_9},          {"non-semistable regression", criterion_10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
