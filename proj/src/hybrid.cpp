#include "tropvol/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tropvol {

namespace {

double smoothstep_down(double rho, double inner, double outer) {
  if (rho <= inner) return 1.0;
  if (rho >= outer) return 0.0;
  const double x = (rho - inner) / (outer - inner);
  return 1 - x * x * (3 - 2 * x);
}

std::vector<double> log_from_moduli(const AdaptedChart& chart, std::span<const double> log_abs) {
  const std::size_t p = chart.b.size();
  double log_f = 0;
  for (std::size_t i = 0; i < p; ++i) log_f += static_cast<double>(chart.b[i]) * log_abs[i];
  std::vector<double> w(p);
  std::size_t heavy = 0;
  for (std::size_t i = 0; i < p; ++i) {
    w[i] = log_abs[i] / log_f;
    if (static_cast<double>(chart.b[i]) * w[i] > static_cast<double>(chart.b[heavy]) * w[heavy]) heavy = i;
  }
  double rest = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (i != heavy) rest -= static_cast<double>(chart.b[i]) * w[i];
  }
  w[heavy] = rest / static_cast<double>(chart.b[heavy]);
  return w;
}

void check_chart(const AdaptedChart& chart, std::size_t coords) {
  if (chart.b.empty()) throw std::invalid_argument("log_chart: chart has no components");
  if (chart.components.size() != chart.b.size()) {
    throw std::invalid_argument("log_chart: components and multiplicities differ in length");
  }
  if (coords != chart.b.size()) throw std::invalid_argument("log_chart: coordinate count mismatch");
  for (auto bi : chart.b) {
    if (bi < 1) throw std::invalid_argument("log_chart: multiplicities must be positive");
  }
}

std::vector<double> chart_log_abs(std::span<const Complex> z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double m = std::abs(z[i]);
    if (m == 0) throw std::domain_error("log_chart: zero coordinate");
    if (!(m < 1)) throw std::domain_error("log_chart: coordinate outside the unit disc");
    out[i] = std::log(m);
  }
  return out;
}

}  // namespace

std::vector<double> log_chart(const AdaptedChart& chart, std::span<const Complex> z) {
  check_chart(chart, z.size());
  return log_from_moduli(chart, chart_log_abs(z));
}

std::vector<double> log_chart(const AdaptedChart& chart, std::span<const Complex> z, Complex t) {
  check_chart(chart, z.size());
  const auto log_abs = chart_log_abs(z);
  double log_f = 0, arg_f = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    log_f += static_cast<double>(chart.b[i]) * log_abs[i];
    arg_f += static_cast<double>(chart.b[i]) * std::arg(z[i]);
  }
  const Complex ratio = std::polar(std::exp(log_f - std::log(std::abs(t))), arg_f - std::arg(t));
  if (t == Complex(0) || std::abs(ratio - 1.0) > 1e-9) {
    throw std::invalid_argument("log_chart: prod z_i^{b_i} does not equal t");
  }
  return log_from_moduli(chart, log_abs);
}

DeltaPoint glue_log(const Atlas& atlas, std::span<const Complex> point) {
  const std::size_t n_components = atlas.model.size();
  std::vector<double> coords(n_components, 0.0);
  std::vector<bool> used(n_components, false);
  double total = 0;
  for (const auto& ac : atlas.charts) {
    const double chi = ac.bump(point);
    if (!(chi > 0)) continue;
    const auto z = ac.coordinates(point);
    if (!z) throw std::domain_error("glue_log: bump is positive outside the chart domain");
    const auto w = log_chart(ac.chart, *z);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto c = static_cast<std::size_t>(ac.chart.components[i]);
      coords[c] += chi * w[i];
      used[c] = true;
    }
    total += chi;
  }
  if (!(total > 0)) throw std::domain_error("glue_log: point outside all charts");
  std::vector<int> vertices;
  for (std::size_t c = 0; c < n_components; ++c) {
    if (used[c]) vertices.push_back(static_cast<int>(c));
  }
  const auto face = atlas.complex.find(vertices);
  if (!face) throw std::domain_error("glue_log: chart faces have no common face");
  DeltaPoint out;
  out.face = *face;
  for (int v : vertices) out.w.push_back(coords[static_cast<std::size_t>(v)] / total);
  return out;
}

double delta_coordinate(const Atlas& atlas, const DeltaPoint& p, int vertex) {
  const auto& verts = atlas.complex.face(p.face).vertices;
  const auto it = std::find(verts.begin(), verts.end(), vertex);
  return it == verts.end() ? 0.0 : p.w[static_cast<std::size_t>(it - verts.begin())];
}

double atlas_log_constant(const Atlas& atlas, std::span<const std::vector<Complex>> points) {
  double constant = 0;
  for (const auto& point : points) {
    const DeltaPoint glued = glue_log(atlas, point);
    for (const auto& ac : atlas.charts) {
      if (!(ac.bump(point) > 0)) continue;
      const auto z = *ac.coordinates(point);
      const auto w = log_chart(ac.chart, z);
      double log_f = 0;
      for (std::size_t i = 0; i < z.size(); ++i) log_f += static_cast<double>(ac.chart.b[i]) * std::log(std::abs(z[i]));
      // Compare on all components, so mass glued outside the chart face counts.
      double deviation = 0;
      for (std::size_t c = 0; c < atlas.model.size(); ++c) {
        const auto& comps = ac.chart.components;
        const auto it = std::find(comps.begin(), comps.end(), static_cast<int>(c));
        const double own = it == comps.end() ? 0.0 : w[static_cast<std::size_t>(it - comps.begin())];
        deviation = std::max(deviation, std::abs(delta_coordinate(atlas, glued, static_cast<int>(c)) - own));
      }
      constant = std::max(constant, deviation * -log_f);
    }
  }
  return constant;
}

Atlas coordinate_pencil_atlas(int n, double inner, double outer) {
  if (!(0 < inner && inner < outer && outer < 1)) {
    throw std::invalid_argument("coordinate_pencil_atlas: need 0 < inner < outer < 1");
  }
  Atlas atlas{presets::coordinate_pencil(n), {}, {}};
  atlas.complex = build_dual_complex(atlas.model);
  const auto size = static_cast<std::size_t>(n + 1);

  auto moduli = [size](std::span<const Complex> Z) {
    if (Z.size() != size) throw std::invalid_argument("coordinate_pencil_atlas: point has the wrong dimension");
    std::vector<double> rho(size);
    double top = 0;
    for (std::size_t i = 0; i < size; ++i) top = std::max(top, std::abs(Z[i]));
    if (!(top > 0)) throw std::invalid_argument("coordinate_pencil_atlas: zero homogeneous vector");
    for (std::size_t i = 0; i < size; ++i) rho[i] = std::abs(Z[i]) / top;
    return rho;
  };

  for (unsigned mask = 1; mask + 1 < (1u << size); ++mask) {
    AtlasChart ac;
    std::string name = "U{";
    for (std::size_t i = 0; i < size; ++i) {
      if (mask & (1u << i)) {
        ac.chart.components.push_back(static_cast<int>(i));
        ac.chart.b.push_back(1);
        name += (name.size() > 2 ? "," : "") + std::to_string(i);
      }
    }
    ac.chart.id = name + "}";
    ac.bump = [=](std::span<const Complex> Z) {
      const auto rho = moduli(Z);
      double chi = 1;
      for (std::size_t i = 0; i < size && chi > 0; ++i) {
        const double h = smoothstep_down(rho[i], inner, outer);
        chi *= (mask & (1u << i)) ? h : 1 - h;
      }
      return chi;
    };
    ac.coordinates = [=](std::span<const Complex> Z) -> std::optional<std::vector<Complex>> {
      const auto rho = moduli(Z);
      std::size_t k = 0;
      for (std::size_t i = 1; i < size; ++i) {
        if (rho[i] > rho[k]) k = i;
      }
      if (mask & (1u << k)) return std::nullopt;
      std::vector<Complex> z;
      for (std::size_t i = 0; i < size; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!(rho[i] < 1) || rho[i] == 0) return std::nullopt;
        z.push_back(Z[i] / Z[k]);
      }
      return z;
    };
    atlas.charts.push_back(std::move(ac));
  }
  return atlas;
}

// ---------------------------------------------------------------------------

double bidisc_log(double log_z0, double log_z1) { return log_z1 / (log_z0 + log_z1); }

namespace {

std::vector<double> tail_points(const HybridOptions& options) {
  std::vector<double> xs;
  for (int j = 0; j <= 8; ++j) xs.push_back(options.x_max * std::pow(2.0, -0.5 * j));
  return xs;
}

}  // namespace

bool hybrid_converges(const BidiscSequence& seq, double w, const HybridOptions& options) {
  for (double x : {options.x_max, options.x_max / 2}) {
    const auto [a, b] = seq.log_moduli(x);
    if (!(a < 0 && b < 0)) return false;
    // t -> 0 means log|t|^{-1} -> infinity.
    if (!(-(a + b) * options.tolerance > 1)) return false;
    if (!(std::abs(bidisc_log(a, b) - w) <= options.tolerance)) return false;
  }
  const auto [a1, b1] = seq.log_moduli(options.x_max);
  const auto [a2, b2] = seq.log_moduli(options.x_max / 2);
  return a1 + b1 < a2 + b2;
}

bool in_f_eps(double zeta, double eps, double log_z0, double log_z1) {
  const double log_eps = std::log(eps);
  if (!(log_z0 <= log_eps && log_z1 <= log_eps)) return false;
  return (zeta + eps) * log_z0 <= log_z1 && log_z1 <= (zeta - eps) * log_z0;
}

bool in_i_eps(double zeta, double eps, double w) {
  return (zeta - eps) / (1 + zeta - eps) <= w && w <= (zeta + eps) / (1 + zeta + eps);
}

bool converges_by_basis(const BidiscSequence& seq, double zeta, const HybridOptions& options) {
  for (double eps = 0.2; eps >= 10 * options.tolerance; eps /= 2) {
    if (eps >= zeta) continue;
    for (double x : tail_points(options)) {
      const auto [a, b] = seq.log_moduli(x);
      if (!in_f_eps(zeta, eps, a, b)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

LaurentPolynomial::LaurentPolynomial(std::map<int, Complex> coefficients) {
  for (const auto& [e, c] : coefficients) {
    if (c != Complex(0)) coefficients_.emplace(e, c);
  }
}

LaurentPolynomial LaurentPolynomial::monomial(int exponent, Complex c) { return LaurentPolynomial({{exponent, c}}); }

int LaurentPolynomial::ord() const {
  if (is_zero()) throw std::domain_error("LaurentPolynomial::ord: zero polynomial");
  return coefficients_.begin()->first;
}

Complex LaurentPolynomial::operator()(Complex z) const {
  Complex v = 0;
  for (const auto& [e, c] : coefficients_) v += c * std::pow(z, e);
  return v;
}

double LaurentPolynomial::log_abs(Complex z) const {
  if (is_zero()) return -INFINITY;
  const int o = ord();
  Complex u = 0;
  for (const auto& [e, c] : coefficients_) u += c * std::pow(z, e - o);
  return o * std::log(std::abs(z)) + std::log(std::abs(u));
}

LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  std::map<int, Complex> out;
  for (const auto& [e1, c1] : f.coefficients_) {
    for (const auto& [e2, c2] : g.coefficients_) out[e1 + e2] += c1 * c2;
  }
  return LaurentPolynomial(std::move(out));
}

LaurentPolynomial operator+(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  std::map<int, Complex> out = f.coefficients_;
  for (const auto& [e, c] : g.coefficients_) out[e] += c;
  return LaurentPolynomial(std::move(out));
}

double hybrid_seminorm(const LaurentPolynomial& f, Complex z, double r) {
  if (!(r > 0 && r < 1)) throw std::invalid_argument("hybrid_seminorm: need 0 < r < 1");
  if (std::abs(z) > r * (1 + 1e-12)) throw std::invalid_argument("hybrid_seminorm: |z| exceeds r");
  if (f.is_zero()) return 0.0;
  if (z == Complex(0)) return std::pow(r, f.ord());
  const double log_f = f.log_abs(z);
  if (std::isinf(log_f) && log_f < 0) return 0.0;
  return std::exp(std::log(r) * log_f / std::log(std::abs(z)));
}

double hybrid_lambda(Complex z, double r) {
  if (!(r > 0 && r < 1)) throw std::invalid_argument("hybrid_lambda: need 0 < r < 1");
  if (z == Complex(0)) return 0.0;
  return std::log(r) / std::log(std::abs(z));
}

}  // namespace tropvol
