#pragma once

// Limit measures mu_0 = sum_sigma R_sigma b_sigma^{-1} lambda_sigma on the top
// faces of the active subcomplex, and closed-form residual masses for charts
// with a monomial metric.

#include "tropvol/snc_model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropvol {

class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Local model t = prod_{i<=p} z_i^{b_i} on a polydisc, times a transverse
/// polydisc of dimension n - p. The metric is |tau| = e^{-g}; g defaults to 0.
struct MonomialChartMetric {
  std::vector<std::int64_t> b;   // b_0..b_p
  std::vector<Rational> a;       // a_0..a_p
  std::vector<double> radii;     // r_0..r_p, empty means all 1
  int transverse_dim = 0;
  std::vector<double> transverse_radii;  // empty means all 1
  std::vector<Rational> pair_exponents;  // per transverse coordinate, empty means all 0
  /// g(z, y) with z the p+1 chart moduli and y the transverse moduli.
  std::function<double(const std::vector<double>&, const std::vector<double>&)> g;

  /// Throws std::invalid_argument on inconsistent sizes or out-of-range radii.
  void validate() const;
  int p() const { return static_cast<int>(b.size()) - 1; }
  double radius(int i) const;
  double transverse_radius(int j) const;
  Rational pair_exponent(int j) const;

  Rational kappa_min() const;
  /// a_i - kappa_min b_i.
  Rational excess(int i) const;
  bool is_active(int i) const { return excess(i) == 0; }
  std::vector<int> active_indices() const;
  int active_dim() const { return static_cast<int>(active_indices().size()) - 1; }
  /// Multiplicities of the active face.
  ZSimplex active_face() const;
};

/// Residual mass of the active stratum: (2pi)^{p-d} prod_{i inactive}
/// r_i^{2e_i}/(2e_i) times prod over transverse coordinates of
/// pi r^{2(1-c)}/(1-c). Throws DivergenceError for e_i <= 0 on an inactive
/// index or c >= 1, std::invalid_argument when g is set or d disagrees.
double residual_mass_closed_form(const MonomialChartMetric& chart, int active_dim);
double residual_mass_closed_form(const MonomialChartMetric& chart);

struct SkeletalEntry {
  int face = 0;
  std::vector<int> vertices;
  int label = 0;
  Integer b_sigma;
  Rational volume;
  double residual_mass = 0;

  Rational geometric_factor() const { return volume / Rational(b_sigma); }
  double weight() const { return residual_mass * to_double(geometric_factor()); }
};

struct SkeletalMeasure {
  std::vector<SkeletalEntry> entries;
  Rational kappa_min;
  int d = 0;

  double total_mass() const;
  /// Faces with a positive weight.
  std::vector<int> support() const;
};

/// masses: residual mass per top-dimensional active face (dual-complex face
/// index). Extra entries on lower faces are ignored. Throws ModelError for a
/// missing face and std::invalid_argument for a negative mass.
SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, const DualComplex& dc,
                                       const std::map<int, double>& masses);
SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, const std::map<int, double>& masses);
/// Same residual mass on every top active face.
SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, double uniform_mass);

/// nu_t(X_t) ~ c |t|^{2 kappa_min} (log|t|^{-1})^d.
struct MassAsymptotics {
  Rational kappa_min;
  int d = 0;
  double c = 0;
};

MassAsymptotics predicted_mass_asymptotics(const SkeletalMeasure& mu);
MassAsymptotics predicted_mass_asymptotics(const WeightedSncModel& m, const std::map<int, double>& masses);
/// Single chart: the active face carries the closed-form residual mass.
MassAsymptotics predicted_mass_asymptotics(const MonomialChartMetric& chart);
/// Total mass of the limit of mu_t on a chart, R b_sigma^{-1} Vol(active face).
double chart_limit_mass(const MonomialChartMetric& chart);

std::string to_csv(const SkeletalMeasure& mu, const WeightedSncModel& m);
std::string to_json(const SkeletalMeasure& mu, const WeightedSncModel& m);

}  // namespace tropvol
