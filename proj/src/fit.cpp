#include "tropvol/fit.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace tropvol {

namespace {

struct Solution {
  Eigen::VectorXd beta;
  Eigen::MatrixXd covariance;
  Eigen::VectorXd residuals;
};

Solution weighted_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& w) {
  const Eigen::VectorXd sw = w.array().sqrt();
  const Eigen::MatrixXd xw = sw.asDiagonal() * x;
  const Eigen::VectorXd yw = sw.asDiagonal() * y;

  // Condition number of the column-normalized design.
  Eigen::MatrixXd scaled = xw;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = scaled.col(j).norm();
    if (norm == 0) throw FitError("fit_mass_asymptotics: degenerate design column");
    scaled.col(j) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-4 * sv(0)) throw FitError("fit_mass_asymptotics: ill-conditioned design matrix");

  Solution out;
  out.beta = xw.colPivHouseholderQr().solve(yw);
  out.residuals = y - x * out.beta;
  const Eigen::Index dof = x.rows() - x.cols();
  const double rss = (sw.asDiagonal() * out.residuals).squaredNorm();
  const double sigma2 = dof > 0 ? rss / static_cast<double>(dof) : 0.0;
  out.covariance = sigma2 * (xw.transpose() * xw).inverse();
  return out;
}

}  // namespace

MassFit fit_mass_asymptotics(std::span<const MassObservation> data, double confidence_radius) {
  std::set<double> distinct;
  bool weighted = !data.empty();
  for (const auto& o : data) {
    if (!(o.t > 0 && o.t < 1)) throw FitError("fit_mass_asymptotics: |t| must lie in (0, 1)");
    if (!(o.nu > 0) || !std::isfinite(o.nu)) throw FitError("fit_mass_asymptotics: masses must be positive");
    distinct.insert(o.t);
    if (!(o.stderr_ > 0)) weighted = false;
  }
  if (distinct.size() < 4) throw FitError("fit_mass_asymptotics: need at least 4 distinct |t| values");
  if (std::log10(*distinct.rbegin() / *distinct.begin()) < 3 - 1e-9) {
    throw FitError("fit_mass_asymptotics: |t| values must span at least 3 decades");
  }

  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd x(n, 3);
  Eigen::VectorXd y(n), w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = data[static_cast<std::size_t>(i)];
    const double log_t = std::log(o.t);
    x(i, 0) = 1;
    x(i, 1) = log_t;
    x(i, 2) = std::log(-log_t);
    y(i) = std::log(o.nu);
    // Delta method: var(log nu) = (stderr / nu)^2.
    w(i) = weighted ? std::pow(o.nu / o.stderr_, 2) : 1.0;
  }

  MassFit fit;
  const Solution full = weighted_least_squares(x, y, w);
  fit.d_raw = full.beta(2);
  fit.d_hat = static_cast<int>(std::lround(fit.d_raw));
  fit.d_confident = std::abs(fit.d_raw - fit.d_hat) < confidence_radius;

  const Eigen::VectorXd y_fixed = y - static_cast<double>(fit.d_hat) * x.col(2);
  const Solution fixed = weighted_least_squares(x.leftCols(2), y_fixed, w);
  fit.kappa_min_hat = fixed.beta(1) / 2;
  fit.c_hat = std::exp(fixed.beta(0));
  fit.kappa_stderr = std::sqrt(std::max(0.0, fixed.covariance(1, 1))) / 2;
  fit.log_c_stderr = std::sqrt(std::max(0.0, fixed.covariance(0, 0)));
  fit.residuals.assign(fixed.residuals.data(), fixed.residuals.data() + n);
  return fit;
}

std::string to_json(const MassFit& fit) {
  nlohmann::json j;
  j["kappa_min_hat"] = fit.kappa_min_hat;
  j["kappa_stderr"] = fit.kappa_stderr;
  j["d_hat"] = fit.d_hat;
  j["d_raw"] = fit.d_raw;
  j["d_confident"] = fit.d_confident;
  j["c_hat"] = fit.c_hat;
  j["log_c_stderr"] = fit.log_c_stderr;
  j["residuals"] = fit.residuals;
  return j.dump(2);
}

}  // namespace tropvol
