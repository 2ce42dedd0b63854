#include "tropvol/pencil.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tropvol {

namespace {

std::size_t histogram_bin(double u, std::size_t bins) {
  return std::min(bins - 1, static_cast<std::size_t>(u * static_cast<double>(bins)));
}

constexpr double pi = std::numbers::pi;

// Multivariate Welford accumulator.
class VectorAccumulator {
 public:
  explicit VectorAccumulator(std::size_t dim = 0) : mean_(dim, 0.0), m2_(dim * dim, 0.0) {}

  void add(std::span<const double> x) {
    ++n_;
    const std::size_t d = mean_.size();
    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] = x[i] - mean_[i];
      mean_[i] += delta[i] / static_cast<double>(n_);
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m2_[i * d + j] += delta[i] * (x[j] - mean_[j]);
    }
  }

  void merge(const VectorAccumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const std::size_t d = mean_.size();
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_), nt = na + nb;
    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) delta[i] = o.mean_[i] - mean_[i];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m2_[i * d + j] += o.m2_[i * d + j] + delta[i] * delta[j] * na * nb / nt;
    }
    for (std::size_t i = 0; i < d; ++i) mean_[i] += delta[i] * nb / nt;
    n_ += o.n_;
  }

  std::size_t count() const { return n_; }
  double mean(std::size_t i) const { return mean_[i]; }
  /// Sample covariance.
  double cov(std::size_t i, std::size_t j) const {
    return n_ > 1 ? m2_[i * mean_.size() + j] / static_cast<double>(n_ - 1) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

// Stratified proposal for one complex coordinate.
struct RadialStrata {
  double r_lo = 0, r_hi = 0;
  std::size_t annuli = 0;
  double log_lo = 0, delta = 0;
  std::vector<double> prob;  // inner, annuli..., outer

  RadialStrata(double lo, double hi, std::size_t k, double floor) : r_lo(lo), r_hi(hi), annuli(k) {
    log_lo = std::log(lo);
    delta = (std::log(hi) - log_lo) / static_cast<double>(k);
    prob.assign(k + 2, (1 - 2 * floor) / static_cast<double>(k));
    prob.front() = floor;
    prob.back() = floor;
  }

  std::size_t count() const { return prob.size(); }

  Complex draw(std::size_t k, Rng& rng) const {
    const double phi = 2 * pi * rng.uniform();
    if (k == 0) return std::polar(r_lo * std::sqrt(rng.uniform()), phi);
    if (k == annuli + 1) {
      double u = rng.uniform();
      while (u == 0) u = rng.uniform();
      return std::polar(r_hi / std::sqrt(u), phi);
    }
    const double lr = log_lo + (static_cast<double>(k - 1) + rng.uniform()) * delta;
    return std::polar(std::exp(lr), phi);
  }

  double density(std::size_t k, Complex x) const {
    const double r = std::abs(x);
    if (k == 0) return r <= r_lo ? 1 / (pi * r_lo * r_lo) : 0.0;
    if (k == annuli + 1) return r >= r_hi ? r_hi * r_hi / (pi * r * r * r * r) : 0.0;
    const double lr = std::log(r);
    const double a = log_lo + static_cast<double>(k - 1) * delta;
    const double slack = 1e-12 * (1 + std::abs(a));
    if (lr < a - slack || lr > a + delta + slack) return 0.0;
    return 1 / (2 * pi * delta * r * r);
  }

  double mixture(Complex x) const {
    double q = 0;
    for (std::size_t k = 0; k < prob.size(); ++k) q += prob[k] * density(k, x);
    return q;
  }
};

std::vector<std::size_t> allocate(std::size_t total, const std::vector<double>& prob) {
  const std::size_t k = prob.size();
  std::vector<std::size_t> out(k, 1);
  if (total <= k) return out;
  const double rest = static_cast<double>(total - k);
  double cum = 0;
  std::size_t given = 0;
  for (std::size_t i = 0; i < k; ++i) {
    cum += prob[i];
    const auto upto = static_cast<std::size_t>(std::llround(cum * rest));
    out[i] += upto - given;
    given = upto;
  }
  out.back() += static_cast<std::size_t>(rest) - given;
  return out;
}

struct Group {
  int technique;
  std::size_t stratum;
  std::size_t begin, end;  // global draw range
};

}  // namespace

HypersurfacePencil HypersurfacePencil::coordinate_pencil(int n, double epsilon) {
  return {PencilKind::coordinate, n, epsilon};
}

HypersurfacePencil HypersurfacePencil::fermat_smooth(int n, double epsilon) {
  return {PencilKind::fermat, n, epsilon};
}

HypersurfacePencil HypersurfacePencil::by_name(const std::string& name, int n, double epsilon) {
  if (name == "coordinate_pencil") return coordinate_pencil(n, epsilon);
  if (name == "fermat_smooth") return fermat_smooth(n, epsilon);
  throw std::invalid_argument("unknown pencil '" + name + "' (expected coordinate_pencil, fermat_smooth)");
}

std::string HypersurfacePencil::id() const {
  std::ostringstream out;
  out << (kind == PencilKind::coordinate ? "coordinate_pencil" : "fermat_smooth") << "(n=" << n
      << ", eps=" << epsilon << ")";
  return out.str();
}

WeightedSncModel HypersurfacePencil::model() const {
  return kind == PencilKind::coordinate ? presets::coordinate_pencil(n) : presets::fermat_smooth();
}

int HypersurfacePencil::d() const { return kind == PencilKind::coordinate ? n - 1 : 0; }

double HypersurfacePencil::singular_modulus() const {
  // Singular points have all Z_i^{n+1} equal; the consistency condition gives
  // ((n+1) t eps)^{n+1} = (-1)^{n+1} resp. (eps t / (n+1))^{n+1} = (-1)^{n+1}.
  const double np1 = n + 1;
  return kind == PencilKind::coordinate ? 1 / (np1 * epsilon) : np1 / epsilon;
}

bool HypersurfacePencil::is_smooth_at(double t) const {
  return std::abs(std::abs(t) / singular_modulus() - 1) > 0.01;
}

Complex HypersurfacePencil::value(std::span<const Complex> x, double t) const {
  Complex power_sum = 1, prod = 1;
  for (const auto& xi : x) {
    power_sum += std::pow(xi, n + 1);
    prod *= xi;
  }
  return kind == PencilKind::coordinate ? t * epsilon * power_sum + prod : power_sum + epsilon * t * prod;
}

void HypersurfacePencil::gradient(std::span<const Complex> x, double t, std::span<Complex> out) const {
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i) {
    Complex others = 1;
    for (std::size_t j = 0; j < un; ++j) {
      if (j != i) others *= x[j];
    }
    const Complex pw = static_cast<double>(n + 1) * std::pow(x[i], n);
    out[i] = kind == PencilKind::coordinate ? t * epsilon * pw + others : pw + epsilon * t * others;
  }
}

std::array<Complex, 3> HypersurfacePencil::trinomial(std::span<const Complex> x, int j, double t) const {
  Complex rest_sum = 1, others = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (static_cast<int>(i) == j) continue;
    rest_sum += std::pow(x[i], n + 1);
    others *= x[i];
  }
  if (kind == PencilKind::coordinate) return {t * epsilon, others, t * epsilon * rest_sum};
  return {Complex(1), epsilon * t * others, rest_sum};
}

std::optional<std::vector<Complex>> solve_trinomial(int m, Complex alpha, Complex beta, Complex gamma, double tol) {
  if (m < 2) throw std::invalid_argument("solve_trinomial: degree must be at least 2");
  if (alpha == Complex(0)) return std::nullopt;
  // Rescale y = rho z so that z^m + b z + c has |b|, |c| <= 1.
  const double rho = std::max(std::pow(std::abs(gamma / alpha), 1.0 / m),
                              std::pow(std::abs(beta / alpha), 1.0 / (m - 1)));
  if (!(rho > 0) || !std::isfinite(rho)) return std::nullopt;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1;
  companion(0, m - 1) = -gamma / (alpha * std::pow(rho, m));
  companion(1, m - 1) = -beta / (alpha * std::pow(rho, m - 1));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) return std::nullopt;
  std::vector<Complex> roots(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) roots[static_cast<std::size_t>(i)] = rho * solver.eigenvalues()[i];
  auto residual = [&](Complex y) {
    const Complex ym = std::pow(y, m);
    const double scale = std::abs(alpha) * std::abs(ym) + std::abs(beta) * std::abs(y) + std::abs(gamma);
    return std::abs(alpha * ym + beta * y + gamma) / scale;
  };
  for (auto& y : roots) {
    for (int it = 0; it < 50 && residual(y) > 1e-15; ++it) {
      const Complex f = alpha * std::pow(y, m) + beta * y + gamma;
      const Complex df = static_cast<double>(m) * alpha * std::pow(y, m - 1) + beta;
      if (df == Complex(0)) break;
      const Complex next = y - f / df;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      y = next;
    }
    if (!(residual(y) < tol)) return std::nullopt;
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      if (std::abs(roots[ua] - roots[ub]) <= 1e-9 * std::max(std::abs(roots[ua]), std::abs(roots[ub]))) {
        return std::nullopt;
      }
    }
  }
  return roots;
}

double simplex_marginal_cdf(int d, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (d <= 0) return u >= 0 ? 1.0 : 0.0;
  return 1 - std::pow(1 - u, d);
}

double PencilSample::pair_z(std::size_t a, std::size_t b) const {
  const double var = covariance[a][a] + covariance[b][b] - 2 * covariance[a][b];
  const double diff = std::abs(faces[a].mu.value - faces[b].mu.value);
  if (var <= 0) {
    const double scale = std::max(std::abs(faces[a].mu.value), std::abs(faces[b].mu.value));
    return diff <= 1e-12 * scale ? 0.0 : INFINITY;
  }
  return diff / std::sqrt(var);
}

PencilSample sample_pencil(const HypersurfacePencil& pencil, double t, std::size_t n_draws, std::uint64_t seed,
                           const PencilOptions& options) {
  if (!(t > 0)) throw std::invalid_argument("sample_pencil: t must be positive");
  if (pencil.n < 1) throw std::invalid_argument("sample_pencil: n must be at least 1");
  if (!(pencil.epsilon > 0)) throw std::invalid_argument("sample_pencil: epsilon must be positive");
  if (!pencil.is_smooth_at(t)) throw std::invalid_argument("sample_pencil: fiber is singular at this t");
  if (n_draws == 0) throw std::invalid_argument("sample_pencil: need at least one draw");
  if (options.annuli == 0 || !(options.floor > 0 && options.floor < 0.5)) {
    throw std::invalid_argument("sample_pencil: need annuli > 0 and floor in (0, 1/2)");
  }

  const int n = pencil.n;
  const auto un = static_cast<std::size_t>(n);
  const int d = pencil.d();
  const double s = -std::log(t);
  const double mu_scale = std::pow(2 * pi * s, -d);

  // Tropical mass of the coordinate pencil is spread over
  // log|x| in [log(t eps), -log(t eps)]; the Fermat fiber sits at |x| ~ 1.
  const double span = pencil.kind == PencilKind::coordinate ? t * pencil.epsilon / 4 : 0.25;
  const RadialStrata strata(span, 1 / span, options.annuli, options.floor);

  // Faces: the coordinate pencil assigns a point to the face opposite to its
  // largest homogeneous coordinate; the Fermat pencil has a single vertex.
  const bool tropical = pencil.kind == PencilKind::coordinate;
  const std::size_t n_faces = tropical ? un + 1 : 1;
  std::vector<std::vector<int>> face_vertices(n_faces);
  for (std::size_t f = 0; f < n_faces; ++f) {
    if (!tropical) {
      face_vertices[f] = {0};
      continue;
    }
    const int k = n - static_cast<int>(f);
    for (int i = 0; i <= n; ++i) {
      if (i != k) face_vertices[f].push_back(i);
    }
  }

  // Draw layout: technique-major, then the stratum of the first free coordinate.
  const std::size_t techniques = un;
  std::vector<std::vector<std::size_t>> counts(techniques);
  std::vector<Group> groups;
  std::size_t cursor = 0;
  for (std::size_t j = 0; j < techniques; ++j) {
    const std::size_t share = n_draws / techniques + (j < n_draws % techniques ? 1 : 0);
    counts[j] = n > 1 ? allocate(std::max<std::size_t>(share, 1), strata.prob) : std::vector<std::size_t>{std::max<std::size_t>(share, 1)};
    for (std::size_t k = 0; k < counts[j].size(); ++k) {
      groups.push_back({static_cast<int>(j), k, cursor, cursor + counts[j][k]});
      cursor += counts[j][k];
    }
  }
  const std::size_t total_draws = cursor;

  // Density of technique r at x, summed over its stratified counts.
  auto technique_density = [&](std::size_t r, std::span<const Complex> x) {
    if (n == 1) return static_cast<double>(counts[r][0]);
    const std::size_t first = r == 0 ? 1 : 0;
    double q = 0;
    for (std::size_t k = 0; k < counts[r].size(); ++k) {
      q += static_cast<double>(counts[r][k]) * strata.density(k, x[first]);
    }
    for (std::size_t i = 0; i < un; ++i) {
      if (i != r && i != first) q *= strata.mixture(x[i]);
    }
    return q;
  };

  struct ShardOut {
    std::vector<VectorAccumulator> acc;  // per group touched, keyed below
    std::vector<std::size_t> group_ids;
    std::vector<std::vector<WeightedPoint>> points;
    std::vector<std::vector<double>> bin_sum, bin_sq;  // per group touched, face-major bins
    std::size_t failures = 0;
  };
  const std::size_t n_bins = n_faces * options.bins;
  const auto shards = make_shards(total_draws);
  std::vector<ShardOut> outs(shards.size());

  for_each_shard(shards, options.threads, [&](const ShardRange& shard) {
    ShardOut& out = outs[shard.index];
    out.points.resize(n_faces);
    Rng rng(shard_seed(seed, shard.index));
    std::vector<Complex> x(un), grad(un);
    std::vector<double> contrib(n_faces);
    std::vector<std::pair<std::size_t, double>> hits;
    auto group_it = std::upper_bound(groups.begin(), groups.end(), shard.begin,
                                     [](std::size_t v, const Group& g) { return v < g.end; });
    for (std::size_t draw = shard.begin; draw < shard.end; ++draw) {
      while (draw >= group_it->end) ++group_it;
      const Group& g = *group_it;
      const std::size_t gid = static_cast<std::size_t>(group_it - groups.begin());
      if (out.group_ids.empty() || out.group_ids.back() != gid) {
        out.group_ids.push_back(gid);
        out.acc.emplace_back(n_faces);
        out.bin_sum.emplace_back(n_bins, 0.0);
        out.bin_sq.emplace_back(n_bins, 0.0);
      }
      const auto j = static_cast<std::size_t>(g.technique);
      bool first_free = true;
      for (std::size_t i = 0; i < un; ++i) {
        if (i == j) continue;
        if (first_free) {
          x[i] = strata.draw(g.stratum, rng);
          first_free = false;
        } else {
          // Mixture draw for the remaining coordinates.
          const double u = rng.uniform();
          double cum = 0;
          std::size_t k = 0;
          while (k + 1 < strata.count() && (cum += strata.prob[k]) <= u) ++k;
          x[i] = strata.draw(k, rng);
        }
      }
      std::fill(contrib.begin(), contrib.end(), 0.0);
      hits.clear();
      const auto tri = pencil.trinomial(x, static_cast<int>(j), t);
      const auto roots = solve_trinomial(n + 1, tri[0], tri[1], tri[2]);
      if (!roots) {
        ++out.failures;
        out.acc.back().add(contrib);
        continue;
      }
      for (const Complex& y : *roots) {
        x[j] = y;
        pencil.gradient(x, t, grad);
        double denom = 0;
        for (std::size_t r = 0; r < techniques; ++r) denom += technique_density(r, x) * std::norm(grad[r]);
        if (!(denom > 0) || !std::isfinite(denom)) {
          ++out.failures;
          continue;
        }
        const double weight = 1 / denom;
        std::size_t face = 0;
        double u = 0.5;
        if (tropical) {
          std::size_t kmax = un;  // Z_n = 1
          double zmax = 1;
          for (std::size_t i = 0; i < un; ++i) {
            if (std::abs(x[i]) > zmax) {
              zmax = std::abs(x[i]);
              kmax = i;
            }
          }
          face = un - kmax;
          const auto& verts = face_vertices[face];
          double total = 0, first = 0;
          for (std::size_t v = 0; v < verts.size(); ++v) {
            const auto vi = static_cast<std::size_t>(verts[v]);
            const double zi = vi == un ? 1.0 : std::abs(x[vi]);
            const double wv = std::log(zmax / zi);
            total += wv;
            if (v == 0) first = wv;
          }
          u = total > 0 ? first / total : 0.5;
        }
        contrib[face] += weight;
        out.points[face].push_back({u, weight});
        hits.emplace_back(face * options.bins + histogram_bin(u, options.bins), weight);
      }
      out.acc.back().add(contrib);
      std::sort(hits.begin(), hits.end());
      for (std::size_t h = 0; h < hits.size();) {
        double y = 0;
        const std::size_t bin = hits[h].first;
        for (; h < hits.size() && hits[h].first == bin; ++h) y += hits[h].second;
        out.bin_sum.back()[bin] += y;
        out.bin_sq.back()[bin] += y * y;
      }
    }
  });

  // Merge per group in shard order.
  std::vector<VectorAccumulator> group_acc(groups.size(), VectorAccumulator(n_faces));
  PencilSample result;
  result.pencil = pencil.id();
  result.t = t;
  result.s = s;
  result.d = d;
  result.smooth = true;
  result.draws = total_draws;
  std::vector<std::vector<WeightedPoint>> points(n_faces);
  std::vector<std::vector<double>> group_sum(groups.size(), std::vector<double>(n_bins, 0.0));
  auto group_sq = group_sum;
  for (const auto& out : outs) {
    for (std::size_t k = 0; k < out.group_ids.size(); ++k) {
      const std::size_t g = out.group_ids[k];
      group_acc[g].merge(out.acc[k]);
      for (std::size_t b = 0; b < n_bins; ++b) {
        group_sum[g][b] += out.bin_sum[k][b];
        group_sq[g][b] += out.bin_sq[k][b];
      }
    }
    for (std::size_t f = 0; f < n_faces; ++f) points[f].insert(points[f].end(), out.points[f].begin(), out.points[f].end());
    result.root_failures += out.failures;
  }

  // Sum estimator: total = sum over groups of N_g * mean_g.
  std::vector<double> value(n_faces, 0.0);
  result.covariance.assign(n_faces, std::vector<double>(n_faces, 0.0));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double ng = static_cast<double>(group_acc[g].count());
    for (std::size_t a = 0; a < n_faces; ++a) {
      value[a] += ng * group_acc[g].mean(a);
      for (std::size_t b = 0; b < n_faces; ++b) result.covariance[a][b] += ng * group_acc[g].cov(a, b);
    }
  }
  double total = 0, total_var = 0;
  for (std::size_t a = 0; a < n_faces; ++a) {
    total += value[a];
    for (std::size_t b = 0; b < n_faces; ++b) total_var += result.covariance[a][b];
  }
  result.nu_total = {total, std::sqrt(std::max(0.0, total_var)), total_draws};
  result.mu_total = {total * mu_scale, std::sqrt(std::max(0.0, total_var)) * mu_scale, total_draws};
  for (auto& row : result.covariance) {
    for (auto& c : row) c *= mu_scale * mu_scale;
  }

  for (std::size_t f = 0; f < n_faces; ++f) {
    PencilFaceResult fr;
    fr.vertices = face_vertices[f];
    const double sd = std::sqrt(std::max(0.0, result.covariance[f][f])) / mu_scale;
    fr.nu = {value[f], sd, total_draws};
    fr.mu = {value[f] * mu_scale, sd * mu_scale, total_draws};
    fr.effective_samples = effective_sample_size(points[f]);
    fr.histogram.assign(options.bins, 0.0);
    fr.histogram_stderr.assign(options.bins, 0.0);
    for (const auto& p : points[f]) fr.histogram[histogram_bin(p.x, options.bins)] += p.weight * mu_scale;
    for (std::size_t b = 0; b < options.bins; ++b) {
      double var = 0;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const double ng = static_cast<double>(group_acc[g].count());
        if (ng < 2) continue;
        const double sum = group_sum[g][f * options.bins + b];
        const double sq = group_sq[g][f * options.bins + b];
        var += ng * std::max(0.0, (sq - sum * sum / ng) / (ng - 1));
      }
      fr.histogram_stderr[b] = std::sqrt(var) * mu_scale;
    }
    const int face_dim = static_cast<int>(fr.vertices.size()) - 1;
    if (face_dim >= 1 && !points[f].empty()) {
      fr.ks = weighted_ks_distance(std::move(points[f]), [&](double u) { return simplex_marginal_cdf(face_dim, u); });
    }
    result.faces.push_back(std::move(fr));
  }
  return result;
}

std::vector<std::vector<Complex>> fiber_points(const HypersurfacePencil& pencil, double t, std::size_t count,
                                               std::uint64_t seed) {
  if (!(t > 0) || !pencil.is_smooth_at(t)) throw std::invalid_argument("fiber_points: t must be positive and smooth");
  const auto un = static_cast<std::size_t>(pencil.n);
  const double span = pencil.kind == PencilKind::coordinate ? t * pencil.epsilon / 4 : 0.25;
  Rng rng(seed);
  std::vector<std::vector<Complex>> out;
  std::vector<Complex> x(un);
  while (out.size() < count) {
    const auto j = static_cast<std::size_t>(rng.below(un));
    for (std::size_t i = 0; i < un; ++i) {
      if (i != j) x[i] = std::polar(std::exp(std::log(span) * (1 - 2 * rng.uniform())), 2 * pi * rng.uniform());
    }
    const auto tri = pencil.trinomial(x, static_cast<int>(j), t);
    const auto roots = solve_trinomial(pencil.n + 1, tri[0], tri[1], tri[2]);
    if (!roots) continue;
    for (const Complex& y : *roots) {
      if (out.size() == count) break;
      x[j] = y;
      std::vector<Complex> Z(x);
      Z.push_back(1.0);
      out.push_back(std::move(Z));
    }
  }
  return out;
}

std::string to_csv(const PencilSample& sample) {
  std::ostringstream out;
  out.precision(17);
  out << "face,bin_center,mass,stderr\n";
  for (const auto& f : sample.faces) {
    std::string name;
    for (int v : f.vertices) name += (name.empty() ? "" : " ") + std::to_string(v);
    for (std::size_t k = 0; k < f.histogram.size(); ++k) {
      out << name << "," << (static_cast<double>(k) + 0.5) / static_cast<double>(f.histogram.size()) << ","
          << f.histogram[k] << "," << f.histogram_stderr[k] << "\n";
    }
  }
  return out.str();
}

std::string to_json(const PencilSample& sample) {
  nlohmann::json j;
  j["pencil"] = sample.pencil;
  j["t"] = sample.t;
  j["d"] = sample.d;
  j["draws"] = sample.draws;
  j["root_failures"] = sample.root_failures;
  j["nu_total"] = {{"value", sample.nu_total.value}, {"stderr", sample.nu_total.stderr_}};
  j["mu_total"] = {{"value", sample.mu_total.value}, {"stderr", sample.mu_total.stderr_}};
  j["faces"] = nlohmann::json::array();
  for (const auto& f : sample.faces) {
    j["faces"].push_back({{"vertices", f.vertices},
                          {"mu", f.mu.value},
                          {"mu_stderr", f.mu.stderr_},
                          {"ks", f.ks},
                          {"effective_samples", f.effective_samples}});
  }
  return j.dump(2);
}

}  // namespace tropvol
