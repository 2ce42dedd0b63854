#include "tropvol/skeletal_measure.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tropvol {

void MonomialChartMetric::validate() const {
  if (b.empty()) throw std::invalid_argument("chart: empty multiplicity vector");
  if (a.size() != b.size()) throw std::invalid_argument("chart: a and b differ in length");
  for (auto bi : b) {
    if (bi < 1) throw std::invalid_argument("chart: multiplicities must be positive");
  }
  if (!radii.empty() && radii.size() != b.size()) throw std::invalid_argument("chart: need one radius per b_i");
  if (transverse_dim < 0) throw std::invalid_argument("chart: negative transverse dimension");
  if (!transverse_radii.empty() && static_cast<int>(transverse_radii.size()) != transverse_dim) {
    throw std::invalid_argument("chart: need one transverse radius per transverse coordinate");
  }
  if (!pair_exponents.empty() && static_cast<int>(pair_exponents.size()) != transverse_dim) {
    throw std::invalid_argument("chart: need one pair exponent per transverse coordinate");
  }
  for (double r : radii) {
    if (!(r > 0 && r <= 1)) throw std::invalid_argument("chart: radii must lie in (0, 1]");
  }
  for (double r : transverse_radii) {
    if (!(r > 0 && r <= 1)) throw std::invalid_argument("chart: radii must lie in (0, 1]");
  }
}

double MonomialChartMetric::radius(int i) const {
  return radii.empty() ? 1.0 : radii.at(static_cast<std::size_t>(i));
}

double MonomialChartMetric::transverse_radius(int j) const {
  return transverse_radii.empty() ? 1.0 : transverse_radii.at(static_cast<std::size_t>(j));
}

Rational MonomialChartMetric::pair_exponent(int j) const {
  return pair_exponents.empty() ? Rational(0) : pair_exponents.at(static_cast<std::size_t>(j));
}

Rational MonomialChartMetric::kappa_min() const {
  Rational k = a.at(0) / Rational(b.at(0));
  for (std::size_t i = 1; i < b.size(); ++i) k = std::min(k, a.at(i) / Rational(b[i]));
  return k;
}

Rational MonomialChartMetric::excess(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return a.at(k) - kappa_min() * Rational(b.at(k));
}

std::vector<int> MonomialChartMetric::active_indices() const {
  std::vector<int> out;
  for (int i = 0; i <= p(); ++i) {
    if (is_active(i)) out.push_back(i);
  }
  return out;
}

ZSimplex MonomialChartMetric::active_face() const {
  std::vector<std::int64_t> ba;
  for (int i : active_indices()) ba.push_back(b[static_cast<std::size_t>(i)]);
  return ZSimplex(std::move(ba));
}

double residual_mass_closed_form(const MonomialChartMetric& chart, int active_dim) {
  chart.validate();
  if (chart.g) throw std::invalid_argument("residual_mass_closed_form: needs the monomial metric (g = 0)");
  if (active_dim != chart.active_dim()) {
    throw std::invalid_argument("residual_mass_closed_form: chart has " + std::to_string(chart.active_dim() + 1) +
                                " active indices, not " + std::to_string(active_dim + 1));
  }
  const double two_pi = 2 * std::numbers::pi;
  double mass = std::pow(two_pi, chart.p() - active_dim);
  for (int i = 0; i <= chart.p(); ++i) {
    const Rational e = chart.excess(i);
    if (e == 0) continue;
    if (e < 0) throw DivergenceError("residual mass diverges: nonpositive exponent on an inactive coordinate");
    const double ed = to_double(e);
    mass *= std::pow(chart.radius(i), 2 * ed) / (2 * ed);
  }
  for (int j = 0; j < chart.transverse_dim; ++j) {
    const Rational c = chart.pair_exponent(j);
    if (c >= 1) throw DivergenceError("residual mass diverges: pair exponent >= 1");
    const double one_minus = to_double(1 - c);
    mass *= std::numbers::pi * std::pow(chart.transverse_radius(j), 2 * one_minus) / one_minus;
  }
  return mass;
}

double residual_mass_closed_form(const MonomialChartMetric& chart) {
  chart.validate();
  return residual_mass_closed_form(chart, chart.active_dim());
}

// ---------------------------------------------------------------------------

double SkeletalMeasure::total_mass() const {
  double total = 0;
  for (const auto& e : entries) total += e.weight();
  return total;
}

std::vector<int> SkeletalMeasure::support() const {
  std::vector<int> out;
  for (const auto& e : entries) {
    if (e.weight() > 0) out.push_back(e.face);
  }
  return out;
}

SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, const DualComplex& dc,
                                       const std::map<int, double>& masses) {
  const WeightData wd = weight_data(m, dc);
  SkeletalMeasure mu;
  mu.kappa_min = wd.kappa_min;
  mu.d = wd.d;
  for (int f : wd.active_faces) {
    const Face& F = dc.face(f);
    if (F.dim() != wd.d) continue;
    auto it = masses.find(f);
    if (it == masses.end()) {
      throw ModelError("assemble_limit_measure: no residual mass for top active face " + std::to_string(f));
    }
    if (!(it->second >= 0)) throw std::invalid_argument("assemble_limit_measure: residual masses must be >= 0");
    mu.entries.push_back({f, F.vertices, F.label, F.simplex.b_sigma(), simplex_volume(F.simplex), it->second});
  }
  return mu;
}

SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, const std::map<int, double>& masses) {
  return assemble_limit_measure(m, build_dual_complex(m), masses);
}

SkeletalMeasure assemble_limit_measure(const WeightedSncModel& m, double uniform_mass) {
  const DualComplex dc = build_dual_complex(m);
  const WeightData wd = weight_data(m, dc);
  std::map<int, double> masses;
  for (int f : wd.active_faces) {
    if (dc.face(f).dim() == wd.d) masses[f] = uniform_mass;
  }
  return assemble_limit_measure(m, dc, masses);
}

MassAsymptotics predicted_mass_asymptotics(const SkeletalMeasure& mu) {
  return {mu.kappa_min, mu.d, std::pow(2 * std::numbers::pi, mu.d) * mu.total_mass()};
}

MassAsymptotics predicted_mass_asymptotics(const WeightedSncModel& m, const std::map<int, double>& masses) {
  return predicted_mass_asymptotics(assemble_limit_measure(m, masses));
}

double chart_limit_mass(const MonomialChartMetric& chart) {
  const ZSimplex s = chart.active_face();
  return residual_mass_closed_form(chart) * to_double(simplex_volume(s) / Rational(s.b_sigma()));
}

MassAsymptotics predicted_mass_asymptotics(const MonomialChartMetric& chart) {
  const int d = chart.active_dim();
  return {chart.kappa_min(), d, std::pow(2 * std::numbers::pi, d) * chart_limit_mass(chart)};
}

namespace {

std::string face_name(const SkeletalEntry& e, const WeightedSncModel& m) {
  std::string out;
  for (int i : e.vertices) out += (out.empty() ? "" : " ") + m.components()[static_cast<std::size_t>(i)].name;
  return out;
}

}  // namespace

std::string to_csv(const SkeletalMeasure& mu, const WeightedSncModel& m) {
  std::ostringstream out;
  out.precision(17);
  out << "face,J,label,b_sigma,volume,residual_mass,weight\n";
  for (const auto& e : mu.entries) {
    out << e.face << "," << face_name(e, m) << "," << e.label << "," << e.b_sigma << "," << to_string(e.volume)
        << "," << e.residual_mass << "," << e.weight() << "\n";
  }
  return out.str();
}

std::string to_json(const SkeletalMeasure& mu, const WeightedSncModel& m) {
  nlohmann::json j;
  j["kappa_min"] = to_string(mu.kappa_min);
  j["d"] = mu.d;
  j["total_mass"] = mu.total_mass();
  j["faces"] = nlohmann::json::array();
  for (const auto& e : mu.entries) {
    j["faces"].push_back({{"face", e.face},
                          {"J", face_name(e, m)},
                          {"label", e.label},
                          {"b_sigma", e.b_sigma.str()},
                          {"volume", to_string(e.volume)},
                          {"residual_mass", e.residual_mass},
                          {"weight", e.weight()}});
  }
  return j.dump(2);
}

}  // namespace tropvol
