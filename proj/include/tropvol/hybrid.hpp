#pragma once

// Log maps on adapted charts, their gluing by a partition of unity, hybrid
// convergence in the bidisc model and the seminorms of the hybrid circle.

#include "tropvol/snc_model.hpp"

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tropvol {

using Complex = std::complex<double>;

/// Chart (U, z) adapted to the components `components`, local equation
/// f = prod z_i^{b_i}.
struct AdaptedChart {
  std::string id;
  std::vector<int> components;
  std::vector<std::int64_t> b;
};

/// Log_U(z) = (log|z_i| / log|f|)_i with f = prod z_i^{b_i}. The coordinate
/// carrying the largest share of sum b_i w_i is computed as the complement,
/// so sum b_i w_i = 1 up to one rounding and every w_i >= 0.
///
/// Throws std::domain_error for a zero coordinate or |z_i| >= 1.
std::vector<double> log_chart(const AdaptedChart& chart, std::span<const Complex> z);
/// Same, checking prod z_i^{b_i} = t to relative accuracy 1e-9.
std::vector<double> log_chart(const AdaptedChart& chart, std::span<const Complex> z, Complex t);

/// Point of the dual complex: barycentric-type coordinates on face(face),
/// ordered like its vertices, with sum b_i w_i = 1.
struct DeltaPoint {
  int face = -1;
  std::vector<double> w;
};

/// Chart of an atlas on an ambient space whose points are coordinate vectors.
/// `coordinates` returns the chart coordinates z_J of a point in the support
/// of `bump`; the bumps sum to 1 near the divisor.
struct AtlasChart {
  AdaptedChart chart;
  std::function<std::optional<std::vector<Complex>>(std::span<const Complex>)> coordinates;
  std::function<double(std::span<const Complex>)> bump;
};

struct Atlas {
  WeightedSncModel model;
  DualComplex complex;
  std::vector<AtlasChart> charts;
};

/// sum_a chi_a Log_a, landing in the smallest face containing every chart
/// face with chi_a > 0. Throws std::domain_error outside all charts or when
/// those chart faces span no common face.
DeltaPoint glue_log(const Atlas& atlas, std::span<const Complex> point);

/// Coordinate of `p` at component index `vertex` (0 when not on the face).
double delta_coordinate(const Atlas& atlas, const DeltaPoint& p, int vertex);

/// Empirical constant C in |glue_log - Log_a| <= C / log|f_a|^{-1}, maximized
/// over the points and the charts whose bump is positive there.
double atlas_log_constant(const Atlas& atlas, std::span<const std::vector<Complex>> points);

/// Atlas near the central fiber of the coordinate pencil, on homogeneous
/// coordinates Z_0..Z_n. One chart per nonempty proper J with z_i = Z_i / Z_k
/// (k the largest coordinate); bump prod_{i in J} h(rho_i) prod_{j not in J}
/// (1 - h(rho_j)), rho_i = |Z_i| / max |Z| and h the smoothstep from 1 at
/// rho <= inner to 0 at rho >= outer.
Atlas coordinate_pencil_atlas(int n, double inner = 0.05, double outer = 0.2);

// ---------------------------------------------------------------------------
// Bidisc model X = D^2, D = E_0 + E_1, Log(z_0, z_1) = log|z_1| / log|z_0 z_1|.

/// Sequence k -> (z_0, z_1) given by its log-moduli as functions of x = log k,
/// so far tails are reachable.
struct BidiscSequence {
  std::function<std::pair<double, double>(double)> log_moduli;
};

struct HybridOptions {
  double x_max = 1e12;      // log k of the last term examined
  double tolerance = 1e-6;  // on Log and on 1 / log|t|^{-1}
};

/// Second Log coordinate at a point given by its log-moduli.
double bidisc_log(double log_z0, double log_z1);

/// True iff t_k -> 0 and Log(z_k) -> w, judged on the tail up to x_max.
bool hybrid_converges(const BidiscSequence& seq, double w, const HybridOptions& options = {});

/// Membership in F_eps = { |z_0|, |z_1| <= eps, |z_0|^{zeta+eps} <= |z_1| <= |z_0|^{zeta-eps} }.
bool in_f_eps(double zeta, double eps, double log_z0, double log_z1);
/// Membership in I_eps = [(zeta-eps)/(1+zeta-eps), (zeta+eps)/(1+zeta+eps)].
bool in_i_eps(double zeta, double eps, double w);
/// Tail of the sequence inside F_eps for eps = 0.2, 0.1, 0.05, ... down to
/// 10 * tolerance; the closures of the F_eps form a neighborhood basis of
/// zeta/(1+zeta).
bool converges_by_basis(const BidiscSequence& seq, double zeta, const HybridOptions& options = {});

// ---------------------------------------------------------------------------
// Hybrid circle.

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::map<int, Complex> coefficients);
  static LaurentPolynomial monomial(int exponent, Complex c = 1.0);

  const std::map<int, Complex>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  /// Smallest exponent with a nonzero coefficient. Throws for f = 0.
  int ord() const;
  Complex operator()(Complex z) const;
  /// log|f(z)| evaluated as ord log|z| + log|u(z)| to avoid underflow.
  double log_abs(Complex z) const;

  friend LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g);
  friend LaurentPolynomial operator+(const LaurentPolynomial& f, const LaurentPolynomial& g);

 private:
  std::map<int, Complex> coefficients_;
};

/// r^{ord f} at z = 0, r^{log|f(z)| / log|z|} otherwise; 0 for f = 0 or a
/// zero of f. Requires 0 < r < 1 and |z| <= r.
double hybrid_seminorm(const LaurentPolynomial& f, Complex z, double r);
/// lambda(z) = log r / log|z|, and 0 at z = 0.
double hybrid_lambda(Complex z, double r);

}  // namespace tropvol
