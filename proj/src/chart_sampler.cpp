#include "tropvol/chart_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tropvol {

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

// Per-draw constants of the log-polar sampler.
struct Plan {
  int dim = 0;
  int drop = 0;               // eliminated coordinate, one achieving min e_i / b_i
  double s = 0;
  std::vector<double> lo;     // lower bounds log(1/r_i)/s
  std::vector<double> hi;     // box upper bounds (unused at drop)
  std::vector<double> rate;   // 2 s e'_i, zero for uniform coordinates
  double base_weight = 0;     // everything that does not depend on the draw
  std::vector<double> transverse_power;  // 1 / (2 (1 - c_j))
};

Plan make_plan(const LocalChart& lc) {
  lc.validate();
  const auto& c = lc.chart;
  Plan plan;
  plan.dim = c.p() + 1;
  plan.s = lc.s();
  const Rational kref = lc.kappa();
  std::vector<Rational> e(static_cast<std::size_t>(plan.dim));
  for (int i = 0; i < plan.dim; ++i) e[static_cast<std::size_t>(i)] = c.a[static_cast<std::size_t>(i)] - kref * Rational(c.b[static_cast<std::size_t>(i)]);
  for (int i = 1; i < plan.dim; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto ud = static_cast<std::size_t>(plan.drop);
    if (e[ui] / Rational(c.b[ui]) < e[ud] / Rational(c.b[ud])) plan.drop = i;
  }
  const auto ud = static_cast<std::size_t>(plan.drop);
  const Rational kappa0 = e[ud] / Rational(c.b[ud]);

  plan.lo.resize(static_cast<std::size_t>(plan.dim));
  for (int i = 0; i < plan.dim; ++i) plan.lo[static_cast<std::size_t>(i)] = std::log(1.0 / c.radius(i)) / plan.s;
  double used = 0;
  for (int i = 0; i < plan.dim; ++i) used += static_cast<double>(c.b[static_cast<std::size_t>(i)]) * plan.lo[static_cast<std::size_t>(i)];
  plan.hi.assign(static_cast<std::size_t>(plan.dim), 0.0);
  plan.rate.assign(static_cast<std::size_t>(plan.dim), 0.0);

  double weight = std::pow(two_pi, c.p()) * std::pow(plan.s, c.p()) / static_cast<double>(c.b[ud]);
  weight *= std::exp(-2 * plan.s * to_double(kappa0));
  for (int i = 0; i < plan.dim; ++i) {
    if (i == plan.drop) continue;
    const auto ui = static_cast<std::size_t>(i);
    const double bi = static_cast<double>(c.b[ui]);
    plan.hi[ui] = plan.lo[ui] + (1.0 - used) / bi;
    const double len = plan.hi[ui] - plan.lo[ui];
    const double ep = to_double(e[ui] - kappa0 * Rational(c.b[ui]));
    if (ep > 0) {
      const double k = 2 * plan.s * ep;
      plan.rate[ui] = k;
      // Integral of e^{-k w} over [lo, hi]; the truncated exponential draw
      // makes the ratio integrand / density exactly this constant.
      weight *= std::exp(-k * plan.lo[ui]) * -std::expm1(-k * len) / k;
    } else {
      weight *= len;
    }
  }
  for (int j = 0; j < c.transverse_dim; ++j) {
    const double one_minus = to_double(1 - c.pair_exponent(j));
    if (one_minus <= 0) throw DivergenceError("transverse pair exponent >= 1");
    plan.transverse_power.push_back(1.0 / (2 * one_minus));
    weight *= std::numbers::pi * std::pow(c.transverse_radius(j), 2 * one_minus) / one_minus;
  }
  const int d = lc.d();
  weight *= std::pow(plan.s, -d) / std::pow(two_pi, d);
  plan.base_weight = weight;
  return plan;
}

}  // namespace

void LocalChart::validate() const {
  chart.validate();
  if (!(t > 0)) throw EmptyFiberError("chart: |t| must be positive");
  double bound = 0;  // log prod r_i^{b_i}
  for (int i = 0; i <= chart.p(); ++i) bound += static_cast<double>(chart.b[static_cast<std::size_t>(i)]) * std::log(chart.radius(i));
  if (!(std::log(t) < bound)) throw EmptyFiberError("chart: fiber is empty, need |t| < prod r_i^{b_i}");
  if (d_ref && *d_ref < 0) throw std::invalid_argument("chart: negative reference dimension");
}

double LocalChart::s() const { return -std::log(t); }

double LocalChart::nu_scale() const {
  const double sv = s();
  return std::pow(two_pi * sv, d()) * std::pow(t, 2 * to_double(kappa()));
}

std::complex<double> FiberPoint::z(std::size_t i) const {
  return std::polar(std::exp(-s * w[i]), two_pi * theta[i]);
}

FiberPoint FiberSamples::point(std::size_t i) const {
  const auto ud = static_cast<std::size_t>(dim);
  const auto ut = static_cast<std::size_t>(transverse);
  return {std::span(w).subspan(i * ud, ud), std::span(theta).subspan(i * ud, ud),
          std::span(y).subspan(i * ut, ut), s};
}

Estimate FiberSamples::estimate(const FiberFunction& h) const {
  Accumulator acc;
  for (std::size_t i = 0; i < size(); ++i) acc.add(weight[i] == 0 ? 0.0 : weight[i] * h(point(i)));
  return acc.mean();
}

Estimate FiberSamples::total() const {
  Accumulator acc;
  for (double x : weight) acc.add(x);
  return acc.mean();
}

FiberSamples sample_fiber_measure(const LocalChart& lc, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("sample_fiber_measure: need at least one sample");
  const Plan plan = make_plan(lc);
  const auto& c = lc.chart;
  FiberSamples out;
  out.dim = plan.dim;
  out.transverse = c.transverse_dim;
  out.s = plan.s;
  out.nu_scale = lc.nu_scale();
  const auto ud = static_cast<std::size_t>(plan.dim);
  const auto ut = static_cast<std::size_t>(c.transverse_dim);
  out.w.resize(n * ud);
  out.theta.resize(n * ud);
  out.y.resize(n * ut);
  out.weight.resize(n);

  const auto drop = static_cast<std::size_t>(plan.drop);
  const double b_drop = static_cast<double>(c.b[drop]);
  const double phase = lc.arg_t / two_pi;
  const auto shards = make_shards(n);
  for_each_shard(shards, threads, [&](const ShardRange& shard) {
    Rng rng(shard_seed(seed, shard.index));
    std::vector<double> zmod(ud), ymod(ut);
    for (std::size_t k = shard.begin; k < shard.end; ++k) {
      double* w = &out.w[k * ud];
      double* th = &out.theta[k * ud];
      double rest = 1.0;
      double angle = phase;
      for (std::size_t i = 0; i < ud; ++i) {
        if (i == drop) continue;
        const double u = rng.uniform();
        const double len = plan.hi[i] - plan.lo[i];
        if (plan.rate[i] > 0) {
          w[i] = plan.lo[i] - std::log1p(u * std::expm1(-plan.rate[i] * len)) / plan.rate[i];
        } else {
          w[i] = plan.lo[i] + u * len;
        }
        rest -= static_cast<double>(c.b[i]) * w[i];
        th[i] = rng.uniform();
        angle -= static_cast<double>(c.b[i]) * th[i];
      }
      w[drop] = rest / b_drop;
      const double branch = static_cast<double>(rng.below(static_cast<std::uint64_t>(c.b[drop])));
      const double t0 = (angle + branch) / b_drop;
      th[drop] = t0 - std::floor(t0);
      for (std::size_t j = 0; j < ut; ++j) {
        const double rho = c.transverse_radius(static_cast<int>(j)) * std::pow(rng.uniform(), plan.transverse_power[j]);
        out.y[k * ut + j] = std::polar(rho, two_pi * rng.uniform());
      }
      double weight = w[drop] >= plan.lo[drop] ? plan.base_weight : 0.0;
      if (weight > 0 && c.g) {
        for (std::size_t i = 0; i < ud; ++i) zmod[i] = std::exp(-plan.s * w[i]);
        for (std::size_t j = 0; j < ut; ++j) ymod[j] = std::abs(out.y[k * ut + j]);
        weight *= std::exp(2 * c.g(zmod, ymod));
      }
      out.weight[k] = weight;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> SimplexHistogram::center(std::size_t k) const {
  std::vector<double> out(static_cast<std::size_t>(dim()));
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const auto ua = static_cast<std::size_t>(axis);
    const std::size_t idx = k % bins;
    k /= bins;
    out[ua] = (static_cast<double>(idx) + 0.5) / static_cast<double>(bins) / static_cast<double>(b[ua + 1]);
  }
  return out;
}

SimplexHistogram make_histogram(const LocalChart& lc, const FiberSamples& samples, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("pushforward_histogram: need at least one bin");
  SimplexHistogram h;
  h.face = lc.chart.active_indices();
  for (int i : h.face) h.b.push_back(lc.chart.b[static_cast<std::size_t>(i)]);
  h.bins = bins;
  const int dim = h.dim();
  std::size_t cells = 1;
  for (int k = 0; k < dim; ++k) cells *= bins;
  h.mass.assign(cells, 0.0);
  std::vector<double> sum_sq(cells, 0.0);
  const double n = static_cast<double>(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double wt = samples.weight[k];
    if (wt == 0) continue;
    const auto p = samples.point(k);
    std::size_t cell = 0;
    for (int axis = 1; axis <= dim; ++axis) {
      const auto ua = static_cast<std::size_t>(axis);
      const double x = p.w[static_cast<std::size_t>(h.face[ua])] * static_cast<double>(h.b[ua]);
      const auto idx = static_cast<std::size_t>(std::clamp(x * static_cast<double>(bins), 0.0, static_cast<double>(bins - 1)));
      cell = cell * bins + idx;
    }
    h.mass[cell] += wt;
    sum_sq[cell] += wt * wt;
  }
  h.stderr_.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double mean = h.mass[c] / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq[c] - n * mean * mean) / (n - 1)) : 0.0;
    h.mass[c] = mean;
    h.stderr_[c] = std::sqrt(var / n);
  }
  h.total = samples.total();
  h.samples = samples.size();
  return h;
}

SimplexHistogram pushforward_histogram(const LocalChart& lc, std::size_t n, std::size_t bins,
                                       std::uint64_t seed, unsigned threads) {
  return make_histogram(lc, sample_fiber_measure(lc, n, seed, threads), bins);
}

double face_coordinate_ks(const LocalChart& lc, const FiberSamples& samples, int axis,
                          const std::function<double(double)>& cdf) {
  const auto face = lc.chart.active_indices();
  const auto idx = static_cast<std::size_t>(face.at(static_cast<std::size_t>(axis)));
  std::vector<WeightedPoint> pts;
  pts.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples.weight[k] > 0) pts.push_back({samples.w[k * static_cast<std::size_t>(samples.dim) + idx], samples.weight[k]});
  }
  return weighted_ks_distance(std::move(pts), cdf);
}

double DecayBound::normalized(double mass, double t, int d) const {
  const double lambda = 1.0 / -std::log(t);
  return mass * std::pow(t, -2 * to_double(kappa_0)) * std::pow(lambda, q - d);
}

DecayBound decay_bound(const LocalChart& lc) {
  lc.validate();
  const auto& c = lc.chart;
  if (c.g) throw std::invalid_argument("decay_bound: needs the monomial metric (g = 0)");
  DecayBound out;
  out.kappa_0 = c.kappa_min() - lc.kappa();
  const auto own = c.active_indices();
  out.q = static_cast<int>(own.size()) - 1;
  const int d = lc.d();
  double constant = std::pow(two_pi, c.p() - d) / static_cast<double>(c.b[static_cast<std::size_t>(own.front())]);
  for (int i = 0; i <= c.p(); ++i) {
    if (i == own.front()) continue;
    const Rational e = c.excess(i);
    constant /= e == 0 ? static_cast<double>(c.b[static_cast<std::size_t>(i)]) : 2 * to_double(e);
  }
  for (int j = 0; j < c.transverse_dim; ++j) {
    const double one_minus = to_double(1 - c.pair_exponent(j));
    constant *= std::numbers::pi * std::pow(c.transverse_radius(j), 2 * one_minus) / one_minus;
  }
  out.constant = constant;
  return out;
}

std::string to_csv(const SimplexHistogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "face";
  for (int a = 1; a <= h.dim(); ++a) out << ",w" << h.face[static_cast<std::size_t>(a)];
  out << ",mass,stderr\n";
  std::string face;
  for (int i : h.face) face += (face.empty() ? "" : " ") + std::to_string(i);
  for (std::size_t k = 0; k < h.mass.size(); ++k) {
    out << face;
    for (double x : h.center(k)) out << "," << x;
    out << "," << h.mass[k] << "," << h.stderr_[k] << "\n";
  }
  return out.str();
}

}  // namespace tropvol
