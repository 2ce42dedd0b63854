#pragma once

// Monte-Carlo sampling of the fiber measures mu_t on a local monomial chart
// t = prod z_i^{b_i}, in logarithmic polar coordinates.

#include "tropvol/skeletal_measure.hpp"
#include "tropvol/stats.hpp"

#include <complex>
#include <optional>
#include <span>

namespace tropvol {

class EmptyFiberError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LocalChart {
  MonomialChartMetric chart;
  double t = 1e-4;   // modulus |t|
  double arg_t = 0;  // phase of t, radians
  /// Normalization mu_t = lambda^d / ((2pi)^d |t|^{2 kappa}) nu_t; both default
  /// to the chart's own kappa_min and active dimension.
  std::optional<Rational> kappa_ref;
  std::optional<int> d_ref;

  /// Throws EmptyFiberError unless 0 < t < prod r_i^{b_i}.
  void validate() const;
  double s() const;
  Rational kappa() const { return kappa_ref.value_or(chart.kappa_min()); }
  int d() const { return d_ref.value_or(chart.active_dim()); }
  /// nu_t = mu_t * nu_scale().
  double nu_scale() const;
};

/// View of one fiber point: w_i = -log|z_i| / s, theta_i = arg(z_i) / 2pi in
/// [0, 1), y the transverse coordinates.
struct FiberPoint {
  std::span<const double> w;
  std::span<const double> theta;
  std::span<const std::complex<double>> y;
  double s;

  std::complex<double> z(std::size_t i) const;
};

using FiberFunction = std::function<double(const FiberPoint&)>;

/// One entry per draw; rejected draws stay in the set with weight 0, so the
/// mean of weight * h is an unbiased estimate of the integral of h against mu_t.
struct FiberSamples {
  int dim = 0;         // p + 1
  int transverse = 0;  // n - p
  double s = 0;
  double nu_scale = 1;
  std::vector<double> w;
  std::vector<double> theta;
  std::vector<std::complex<double>> y;
  std::vector<double> weight;

  std::size_t size() const { return weight.size(); }
  FiberPoint point(std::size_t i) const;
  Estimate estimate(const FiberFunction& h) const;
  Estimate total() const;
};

FiberSamples sample_fiber_measure(const LocalChart& chart, std::size_t n, std::uint64_t seed,
                                  unsigned threads = 1);

/// Mass of the limit measure on a regular grid over the chart coordinates of
/// the active face (its first vertex is dropped).
struct SimplexHistogram {
  std::vector<int> face;               // chart indices of the active face
  std::vector<std::int64_t> b;         // multiplicities on the face
  std::size_t bins = 0;                // per axis
  std::vector<double> mass;            // bins^dim entries, row-major
  std::vector<double> stderr_;         // per bin
  Estimate total;
  std::size_t samples = 0;

  int dim() const { return static_cast<int>(face.size()) - 1; }
  /// Center of bin `k` in chart coordinates.
  std::vector<double> center(std::size_t k) const;
};

SimplexHistogram pushforward_histogram(const LocalChart& chart, std::size_t n, std::size_t bins,
                                       std::uint64_t seed, unsigned threads = 1);
SimplexHistogram make_histogram(const LocalChart& chart, const FiberSamples& samples, std::size_t bins);

/// Weighted KS distance of the coordinate w_{face[axis]} against `cdf`.
double face_coordinate_ks(const LocalChart& chart, const FiberSamples& samples, int axis,
                          const std::function<double(double)>& cdf);

/// Explicit bound mu_t(U_t) <= C |t|^{2 kappa_0} lambda(t)^{d - q} for the
/// monomial metric; kappa_0 is the chart's kappa_min minus the reference
/// kappa and q the dimension of the chart's own active face.
struct DecayBound {
  Rational kappa_0;
  int q = 0;
  double constant = 0;

  /// mass * |t|^{-2 kappa_0} * lambda^{q - d}.
  double normalized(double mass, double t, int d) const;
};

DecayBound decay_bound(const LocalChart& chart);

std::string to_csv(const SimplexHistogram& h);

}  // namespace tropvol
