#pragma once

// Monte-Carlo checks of the logarithmic polar decompositions
//
//   rho   = (2 pi)^{p+1} lambda(dw) (x) rho_w          on T = (C^*)^{p+1}
//   rho_t = (2 pi)^p / b lambda_s(dw) (x) rho_{t,w}     on T_t = { prod z_i^{b_i} = t }
//
// with z_j = exp(-w_j + 2 pi i theta_j). The left-hand sides are sampled in
// Cartesian coordinates of z; the right-hand sides are iterated integrals,
// inner torus average on an exact grid and outer w-integral by adaptive
// Gauss-Kronrod quadrature.

#include "tropvol/stats.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace tropvol {

struct TrigTerm {
  std::vector<int> m;  // frequency vector, length p + 1
  double c = 0;
  double phi = 0;
};

/// f(w, theta) = A(w) (1 + sum_k c_k cos(2 pi m_k . theta + phi_k)), where
/// A(w) = prod_i exp(-(w_i - center_i)^2 / (2 sigma^2) - 2 e_i w_i) on the box
/// [lo, hi]^{p+1} and 0 outside. sigma <= 0 drops the Gaussian factor.
struct TrigTestFunction {
  std::vector<double> center;
  std::vector<double> e;
  double sigma = 0.5;
  double lo = 0.3;
  double hi = 1.0;
  std::vector<TrigTerm> terms;

  std::size_t dim() const { return center.size(); }
  void validate() const;
  double radial(std::size_t i, double w) const;
  double angular(std::span<const double> theta) const;
  double operator()(std::span<const double> w, std::span<const double> theta) const;
  /// Evaluates at z, all coordinates nonzero.
  double at(std::span<const std::complex<double>> z) const;
};

/// Random test function in p + 1 variables. One term uses the frequency b so
/// the fiber average depends on arg t; sum |c_k| <= 0.6.
TrigTestFunction random_trig_test_function(std::span<const std::int64_t> b, Rng& rng);

struct PolarCheck {
  Estimate lhs;
  double rhs = 0;
  double discrepancy() const;  // |lhs - rhs| / |rhs|
  double z_score() const;
};

/// Haar decomposition on T.
PolarCheck torus_decomposition_check(const TrigTestFunction& f, std::size_t n, std::uint64_t seed,
                                     unsigned threads = 1);

/// Fiber decomposition on T_t. t = exp(-s + i arg_t).
PolarCheck polar_decomposition_check(std::span<const std::int64_t> b, const TrigTestFunction& f, double s,
                                     double arg_t, std::size_t n, std::uint64_t seed, unsigned threads = 1);

struct TorsorPoint {
  std::complex<double> z;
  double mass = 0;
};

/// p = 0: the b points of { z^b = t }, each with its rho_t mass.
std::vector<TorsorPoint> point_fiber(std::int64_t b, std::complex<double> t);

}  // namespace tropvol
