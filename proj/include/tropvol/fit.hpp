#pragma once

// Least-squares recovery of the exponents in nu_t ~ c |t|^{2 kappa} (log 1/|t|)^d.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropvol {

class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MassObservation {
  double t = 0;        // |t| in (0, 1)
  double nu = 0;       // estimate of nu_t(X_t), positive
  double stderr_ = 0;  // 0 for exact values
};

struct MassFit {
  double kappa_min_hat = 0;
  int d_hat = 0;
  double d_raw = 0;         // unconstrained exponent of log 1/|t|
  bool d_confident = false;  // d_raw within the confidence radius of d_hat
  double c_hat = 0;
  double kappa_stderr = 0;
  double log_c_stderr = 0;
  std::vector<double> residuals;  // log-scale, after refitting with d = d_hat
};

/// Regresses log nu on [1, log|t|, log log(1/|t|)], rounds the last exponent
/// and refits with it held fixed. Observations are weighted by their relative
/// standard errors when all of them carry one.
///
/// Throws FitError for fewer than 4 distinct |t|, a span below 3 decades,
/// non-positive masses, |t| outside (0, 1), or an ill-conditioned design
/// (column-normalized condition number above 1e4).
MassFit fit_mass_asymptotics(std::span<const MassObservation> data, double confidence_radius = 0.25);

std::string to_json(const MassFit& fit);

}  // namespace tropvol
