#include "tropvol/base_change.hpp"

#include <numeric>
#include <stdexcept>

namespace tropvol {

namespace {

Integer power(const Integer& base, int exp) {
  Integer out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Integer index_of_refinement(std::span<const std::int64_t> b, std::int64_t m) {
  // m L = m Z^{p+1} + Z b, so [L : Z^{p+1}] = m^{p+1} / covol(m L).
  const std::size_t n = b.size();
  IntMatrix gens(n, std::vector<Integer>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    gens[i][i] = m;
    gens[i][n] = b[i];
  }
  return power(Integer(m), static_cast<int>(n)) / lattice_covolume(gens);
}

}  // namespace

FaceBaseChange face_base_change(std::span<const std::int64_t> b, std::int64_t m,
                                std::optional<std::int64_t> g) {
  if (m < 1) throw std::invalid_argument("base change: m must be positive");
  const ZSimplex s(std::vector<std::int64_t>(b.begin(), b.end()));
  FaceBaseChange r;
  r.b.assign(b.begin(), b.end());
  r.m = m;
  r.fg = gcd(Integer(m), s.b_sigma());
  r.e = Integer(m) / r.fg;
  r.e_lattice = index_of_refinement(b, m);
  r.g = g ? Integer(*g) : r.fg;
  if (r.g < 1 || r.fg % r.g != 0) {
    throw std::invalid_argument("base change: g = " + r.g.str() + " does not divide gcd(m, b_sigma) = " + r.fg.str());
  }
  r.f = r.fg / r.g;
  r.b_prime = s.b_sigma() / r.fg;
  r.volume_scale = power(Integer(m), s.dim());
  r.residual_scale = Rational(Integer(1), r.fg * r.fg);
  return r;
}

std::vector<BaseChangeRow> base_change_report(const WeightedSncModel& model, std::int64_t m,
                                              const std::map<int, std::int64_t>& g_overrides) {
  const DualComplex dc = build_dual_complex(model);
  std::vector<BaseChangeRow> rows;
  for (std::size_t f = 0; f < dc.size(); ++f) {
    const int fi = static_cast<int>(f);
    auto it = g_overrides.find(fi);
    std::optional<std::int64_t> g;
    if (it != g_overrides.end()) g = it->second;
    rows.push_back({fi, face_base_change(dc.face(fi).simplex.multiplicities(), m, g)});
  }
  return rows;
}

PushforwardCheck pushforward_identity_check(const SkeletalMeasure& measure, std::int64_t m,
                                            const std::map<int, std::int64_t>& g_overrides) {
  PushforwardCheck out;
  const Integer md = power(Integer(m), measure.d);
  for (const auto& entry : measure.entries) {
    auto it = g_overrides.find(entry.face);
    std::optional<std::int64_t> g;
    if (it != g_overrides.end()) g = it->second;
    const Integer fg = gcd(Integer(m), entry.b_sigma);
    if (g && (*g < 1 || fg % *g != 0)) {
      throw std::invalid_argument("base change: g does not divide gcd(m, b_sigma)");
    }
    const Integer gg = g ? Integer(*g) : fg;
    const Integer f = fg / gg;
    const Integer b_prime = entry.b_sigma / fg;
    const Rational per_face = Rational(f) * Rational(Integer(1), fg * fg) / Rational(b_prime) *
                              Rational(md) * entry.volume;
    PushforwardFaceCheck c{entry.face, Rational(gg) * per_face, Rational(md) * entry.volume / Rational(entry.b_sigma)};
    if (c.discrepancy() != 0) out.pass = false;
    out.faces.push_back(std::move(c));
  }
  return out;
}

std::vector<Component> base_changed_components(const WeightedSncModel& model, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("base change: m must be positive");
  std::vector<Component> out;
  for (const auto& c : model.components()) {
    const std::int64_t gm = std::gcd(m, c.b);
    out.push_back({c.name, c.b / gm, c.a * Rational(m / gm)});
  }
  return out;
}

KappaScalingCheck kappa_scaling_check(const WeightedSncModel& model, std::int64_t m) {
  KappaScalingCheck out;
  const auto comps = base_changed_components(model, m);
  const auto wd = weight_data(model);
  out.kappa = wd.kappa;
  out.kappa_min = wd.kappa_min;
  out.kappa_min_prime = comps.front().a / Rational(comps.front().b);
  for (const auto& c : comps) {
    out.kappa_prime.push_back(c.a / Rational(c.b));
    out.kappa_min_prime = std::min(out.kappa_min_prime, out.kappa_prime.back());
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (out.kappa_prime[i] != Rational(m) * out.kappa[i]) out.pass = false;
    const bool active_prime = out.kappa_prime[i] == out.kappa_min_prime;
    if (active_prime != wd.active_vertex[i]) out.active_vertices_preserved = false;
  }
  if (out.kappa_min_prime != Rational(m) * out.kappa_min) out.pass = false;
  out.pass = out.pass && out.active_vertices_preserved;
  return out;
}

}  // namespace tropvol
