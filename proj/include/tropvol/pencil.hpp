#pragma once

// Projective hypersurface pencils and Monte-Carlo sampling of nu_t = |eta_t|^2,
// eta_t the Poincare residue of the defining equation.
//
//   coordinate pencil   t eps (Z_0^{n+1} + ... + Z_n^{n+1}) + Z_0 ... Z_n = 0
//   Fermat pencil       (Z_0^{n+1} + ... + Z_n^{n+1}) + eps t Z_0 ... Z_n = 0
//
// Points are computed in the affine chart Z_n = 1 with coordinates
// x_0..x_{n-1}. A draw picks the coordinates other than x_j and solves the
// trinomial in x_j; draws for different j are combined with balance-heuristic
// multiple importance sampling.

#include "tropvol/snc_model.hpp"
#include "tropvol/stats.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropvol {

using Complex = std::complex<double>;

enum class PencilKind { coordinate, fermat };

struct HypersurfacePencil {
  PencilKind kind = PencilKind::coordinate;
  int n = 2;
  double epsilon = 0.1;

  static HypersurfacePencil coordinate_pencil(int n, double epsilon = 0.1);
  static HypersurfacePencil fermat_smooth(int n, double epsilon = 0.1);
  /// "coordinate_pencil" or "fermat_smooth".
  static HypersurfacePencil by_name(const std::string& name, int n, double epsilon = 0.1);

  std::string id() const;
  /// Combinatorial model of the central fiber.
  WeightedSncModel model() const;
  /// Dimension of the active subcomplex: n - 1 for the coordinate pencil, 0 for Fermat.
  int d() const;
  /// |t| at which the fibers are singular.
  double singular_modulus() const;
  /// False when |t| is within 1% of the singular modulus.
  bool is_smooth_at(double t) const;

  /// F and its gradient at x (size n) in the chart Z_n = 1.
  Complex value(std::span<const Complex> x, double t) const;
  void gradient(std::span<const Complex> x, double t, std::span<Complex> out) const;
  /// F(x) as alpha y^{n+1} + beta y + gamma in y = x_j.
  std::array<Complex, 3> trinomial(std::span<const Complex> x, int j, double t) const;
};

/// Roots of alpha y^m + beta y + gamma (m >= 2, or m = 1 is rejected) by
/// companion-matrix eigenvalues, polished by Newton steps. Returns nullopt
/// unless every root reaches relative residual below tol and the roots are
/// distinct.
std::optional<std::vector<Complex>> solve_trinomial(int m, Complex alpha, Complex beta, Complex gamma,
                                                    double tol = 1e-10);

struct PencilOptions {
  std::size_t annuli = 24;   // log-scale annuli per coordinate
  double floor = 0.02;       // sampling probability of the inner and outer strata each
  std::size_t bins = 20;     // histogram bins per face
  unsigned threads = 1;
};

struct PencilFaceResult {
  std::vector<int> vertices;  // component indices of the face
  Estimate nu;                // nu_t mass landing on the face
  Estimate mu;                // same, normalized by lambda^d / (2 pi)^d
  double ks = 0;              // first barycentric coordinate against its uniform law
  double effective_samples = 0;
  std::vector<double> histogram;  // mu mass per bin of the first barycentric coordinate
  std::vector<double> histogram_stderr;
};

struct PencilSample {
  std::string pencil;
  double t = 0;
  double s = 0;
  int d = 0;
  bool smooth = true;
  std::size_t draws = 0;
  std::size_t root_failures = 0;
  Estimate nu_total;
  Estimate mu_total;
  std::vector<PencilFaceResult> faces;
  /// Covariance of the face mu estimates.
  std::vector<std::vector<double>> covariance;

  /// |mu_a - mu_b| / stderr of the difference.
  double pair_z(std::size_t a, std::size_t b) const;
};

/// Throws std::invalid_argument when t is not positive or the fiber is singular.
PencilSample sample_pencil(const HypersurfacePencil& pencil, double t, std::size_t n_draws, std::uint64_t seed,
                           const PencilOptions& options = {});

/// Points of the fiber at t in homogeneous coordinates (x_0, ..., x_{n-1}, 1):
/// free coordinates log-uniform over the sampling range, x_j a root of the
/// trinomial. Unweighted; meant for geometric checks.
std::vector<std::vector<Complex>> fiber_points(const HypersurfacePencil& pencil, double t, std::size_t count,
                                               std::uint64_t seed);

/// CDF of the first barycentric coordinate of the uniform measure on a
/// simplex of dimension d: 1 - (1 - u)^d.
double simplex_marginal_cdf(int d, double u);

std::string to_csv(const PencilSample& sample);
std::string to_json(const PencilSample& sample);

}  // namespace tropvol
