#include "tropvol/polar.hpp"

#include "tropvol/lattice.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace tropvol {

namespace {

constexpr double pi = std::numbers::pi;
using Complex = std::complex<double>;

double integrate(const std::function<double(double)>& g, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 12, 1e-12);
}

// Grid size on which the uniform average of every term is exact.
std::size_t exact_grid(const TrigTestFunction& f, std::span<const std::int64_t> b) {
  long bound = 0;
  for (const auto& term : f.terms) {
    for (std::size_t j = 0; j < term.m.size(); ++j) {
      long freq = std::labs(term.m[j]);
      if (!b.empty() && j > 0) freq += std::labs(term.m[0]) * static_cast<long>(b[j]);
      bound = std::max(bound, freq);
    }
  }
  return static_cast<std::size_t>(2 * bound + 2);
}

// Average of f's angular part over theta_first..theta_last on a regular grid,
// theta_0 supplied by `complete` (may be a no-op).
double grid_average(std::size_t dims, std::size_t grid, const std::function<double(std::vector<double>&)>& eval,
                    std::size_t total) {
  std::vector<double> theta(total, 0.0);
  std::vector<std::size_t> idx(dims, 0);
  const std::size_t offset = total - dims;
  double sum = 0;
  std::size_t count = 0;
  while (true) {
    for (std::size_t j = 0; j < dims; ++j) theta[offset + j] = static_cast<double>(idx[j]) / static_cast<double>(grid);
    sum += eval(theta);
    ++count;
    std::size_t j = 0;
    while (j < dims && ++idx[j] == grid) idx[j++] = 0;
    if (j == dims) break;
  }
  return sum / static_cast<double>(count);
}

Estimate run_shards(std::size_t n, std::uint64_t seed, unsigned threads, const std::function<double(Rng&)>& draw) {
  if (n == 0) throw std::invalid_argument("polar check: need at least one sample");
  const auto shards = make_shards(n);
  std::vector<Accumulator> acc(shards.size());
  for_each_shard(shards, threads, [&](const ShardRange& shard) {
    Rng rng(shard_seed(seed, shard.index));
    for (std::size_t i = shard.begin; i < shard.end; ++i) acc[shard.index].add(draw(rng));
  });
  Accumulator total;
  for (const auto& a : acc) total.merge(a);
  return total.mean();
}

Complex cartesian_point(double radius, Rng& rng) {
  return {radius * (2 * rng.uniform() - 1), radius * (2 * rng.uniform() - 1)};
}

}  // namespace

void TrigTestFunction::validate() const {
  if (center.empty()) throw std::invalid_argument("TrigTestFunction: empty center");
  if (!e.empty() && e.size() != center.size()) throw std::invalid_argument("TrigTestFunction: exponent size mismatch");
  if (!(lo < hi)) throw std::invalid_argument("TrigTestFunction: need lo < hi");
  for (const auto& term : terms) {
    if (term.m.size() != center.size()) throw std::invalid_argument("TrigTestFunction: frequency size mismatch");
  }
}

double TrigTestFunction::radial(std::size_t i, double w) const {
  if (w < lo || w > hi) return 0.0;
  double v = 1;
  if (sigma > 0) v = std::exp(-(w - center[i]) * (w - center[i]) / (2 * sigma * sigma));
  if (!e.empty()) v *= std::exp(-2 * e[i] * w);
  return v;
}

double TrigTestFunction::angular(std::span<const double> theta) const {
  double v = 1;
  for (const auto& term : terms) {
    double phase = 0;
    for (std::size_t j = 0; j < theta.size(); ++j) phase += term.m[j] * theta[j];
    v += term.c * std::cos(2 * pi * phase + term.phi);
  }
  return v;
}

double TrigTestFunction::operator()(std::span<const double> w, std::span<const double> theta) const {
  double a = 1;
  for (std::size_t i = 0; i < w.size() && a != 0; ++i) a *= radial(i, w[i]);
  return a == 0 ? 0.0 : a * angular(theta);
}

double TrigTestFunction::at(std::span<const Complex> z) const {
  std::vector<double> w(z.size()), theta(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    w[i] = -std::log(std::abs(z[i]));
    theta[i] = std::arg(z[i]) / (2 * pi);
  }
  return (*this)(w, theta);
}

TrigTestFunction random_trig_test_function(std::span<const std::int64_t> b, Rng& rng) {
  TrigTestFunction f;
  const std::size_t dim = b.size();
  f.sigma = rng.uniform(0.3, 0.8);
  for (std::size_t i = 0; i < dim; ++i) f.center.push_back(rng.uniform(f.lo, f.hi));
  f.e.assign(dim, 0.0);
  const double budget = 0.6;
  const std::size_t n_terms = 3;
  std::vector<double> share(n_terms);
  double total = 0;
  for (auto& x : share) total += (x = rng.uniform(0.2, 1.0));
  for (std::size_t k = 0; k < n_terms; ++k) {
    TrigTerm term;
    if (k == 0) {
      term.m.assign(b.begin(), b.end());
    } else {
      for (std::size_t i = 0; i < dim; ++i) term.m.push_back(static_cast<int>(rng.below(5)) - 2);
    }
    term.c = (rng.uniform() < 0.5 ? -1 : 1) * budget * share[k] / total;
    term.phi = 2 * pi * rng.uniform();
    f.terms.push_back(std::move(term));
  }
  return f;
}

double PolarCheck::discrepancy() const { return std::abs(lhs.value - rhs) / std::abs(rhs); }

double PolarCheck::z_score() const { return lhs.z_score(rhs); }

PolarCheck torus_decomposition_check(const TrigTestFunction& f, std::size_t n, std::uint64_t seed, unsigned threads) {
  f.validate();
  const std::size_t dim = f.dim();
  const double radius = std::exp(-f.lo);
  const double area = 4 * radius * radius;

  PolarCheck out;
  out.lhs = run_shards(n, seed, threads, [&](Rng& rng) {
    std::vector<Complex> z(dim);
    double weight = 1;
    for (auto& zi : z) {
      zi = cartesian_point(radius, rng);
      weight *= area / std::norm(zi);
    }
    return weight * f.at(z);
  });

  double outer = 1;
  for (std::size_t i = 0; i < dim; ++i) outer *= integrate([&](double w) { return f.radial(i, w); }, f.lo, f.hi);
  const double inner = grid_average(dim, exact_grid(f, {}), [&](std::vector<double>& th) { return f.angular(th); }, dim);
  out.rhs = std::pow(2 * pi, static_cast<double>(dim)) * inner * outer;
  return out;
}

PolarCheck polar_decomposition_check(std::span<const std::int64_t> b, const TrigTestFunction& f, double s,
                                     double arg_t, std::size_t n, std::uint64_t seed, unsigned threads) {
  f.validate();
  if (b.size() != f.dim()) throw std::invalid_argument("polar_decomposition_check: b and f dimensions differ");
  const ZSimplex simplex(std::vector<std::int64_t>(b.begin(), b.end()));
  const std::size_t p = b.size() - 1;
  const auto b0 = b[0];
  const double db0 = static_cast<double>(b0);
  const Complex log_t(-s, arg_t);

  // Left side: z_1..z_p Cartesian, z_0 over its b_0 branches, rho_t = b_0^{-2} prod |dz_j / z_j|^2.
  auto fiber_sum = [&](std::vector<Complex>& logz) {
    Complex rest = log_t;
    for (std::size_t j = 1; j <= p; ++j) rest -= static_cast<double>(b[j]) * logz[j];
    std::vector<double> w(p + 1), theta(p + 1);
    for (std::size_t j = 1; j <= p; ++j) {
      w[j] = -logz[j].real();
      theta[j] = logz[j].imag() / (2 * pi);
    }
    double sum = 0;
    for (std::int64_t k = 0; k < b0; ++k) {
      const Complex l0 = (rest + Complex(0, 2 * pi * static_cast<double>(k))) / db0;
      w[0] = -l0.real();
      theta[0] = l0.imag() / (2 * pi);
      sum += f(w, theta);
    }
    return sum / (db0 * db0);
  };

  PolarCheck out;
  if (p == 0) {
    std::vector<Complex> logz(1);
    out.lhs = {fiber_sum(logz), 0.0, 1};
  } else {
    const double radius = std::exp(-f.lo);
    const double area = 4 * radius * radius;
    out.lhs = run_shards(n, seed, threads, [&](Rng& rng) {
      std::vector<Complex> logz(p + 1);
      double weight = 1;
      for (std::size_t j = 1; j <= p; ++j) {
        const Complex z = cartesian_point(radius, rng);
        weight *= area / std::norm(z);
        logz[j] = std::log(z);
      }
      return weight * fiber_sum(logz);
    });
  }

  // Right side: inner average over K_{t,w} via theta_1..theta_p and the b_0 branches of theta_0.
  const double inner = grid_average(
      p, exact_grid(f, b),
      [&](std::vector<double>& th) {
        double acc = 0;
        double base = arg_t / (2 * pi);
        for (std::size_t j = 1; j <= p; ++j) base -= static_cast<double>(b[j]) * th[j];
        for (std::int64_t k = 0; k < b0; ++k) {
          th[0] = (base + static_cast<double>(k)) / db0;
          acc += f.angular(th);
        }
        return acc / db0;
      },
      p + 1);

  // Outer integral over H_s in the chart w_1..w_p; w_0 is eliminated.
  std::vector<double> suffix(p + 2, 0.0);
  for (std::size_t j = p; j >= 1; --j) suffix[j] = suffix[j + 1] + static_cast<double>(b[j]);
  std::function<double(std::size_t, double)> level = [&](std::size_t j, double used) -> double {
    if (j > p) return f.radial(0, (s - used) / db0);
    const double bj = static_cast<double>(b[j]);
    const double rest = suffix[j + 1];
    const double lo = std::max(f.lo, (s - used - db0 * f.hi - rest * f.hi) / bj);
    const double hi = std::min(f.hi, (s - used - db0 * f.lo - rest * f.lo) / bj);
    return integrate([&](double w) { return f.radial(j, w) * level(j + 1, used + bj * w); }, lo, hi);
  };
  const double outer = level(1, 0.0);
  const double density = to_double(normalized_density_chart(simplex));
  const double b_sigma = to_double(Rational(simplex.b_sigma()));
  out.rhs = std::pow(2 * pi, static_cast<double>(p)) / b_sigma * density * inner * outer;
  return out;
}

std::vector<TorsorPoint> point_fiber(std::int64_t b, Complex t) {
  if (b < 1) throw std::invalid_argument("point_fiber: b must be positive");
  if (t == Complex(0)) throw std::invalid_argument("point_fiber: t must be nonzero");
  std::vector<TorsorPoint> out;
  const double db = static_cast<double>(b);
  const Complex root = std::polar(std::pow(std::abs(t), 1 / db), std::arg(t) / db);
  for (std::int64_t k = 0; k < b; ++k) {
    out.push_back({root * std::polar(1.0, 2 * pi * static_cast<double>(k) / db), 1 / (db * db)});
  }
  return out;
}

}  // namespace tropvol
