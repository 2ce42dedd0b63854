#include "tropvol/harness.hpp"

#include "tropvol/base_change.hpp"
#include "tropvol/chart_sampler.hpp"
#include "tropvol/cy_skeleton.hpp"
#include "tropvol/fit.hpp"
#include "tropvol/hybrid.hpp"
#include "tropvol/model_spec.hpp"
#include "tropvol/pencil.hpp"
#include "tropvol/polar.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace tropvol {

using json = nlohmann::ordered_json;

namespace {

constexpr double kKappaTolerance = 0.01;
constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kCommands{"dual-complex", "weights",      "limit-measure", "base-change",
                                         "sample",       "pushforward",  "fit-mass",      "polar-check",
                                         "hybrid-check", "skeleton-check", "verify"};

const std::vector<std::string> kSuites{"lattice", "annulus",    "chart",  "pushforward", "decay", "polar",
                                       "base-change", "pencil", "hybrid", "non-semistable", "all"};

bool is_pencil_preset(const std::optional<std::string>& preset) {
  return preset && (*preset == "coordinate_pencil" || *preset == "fermat_smooth");
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

std::string face_name(const WeightedSncModel& m, const std::vector<int>& vertices) {
  std::vector<std::string> names;
  for (int v : vertices) names.push_back(m.components()[static_cast<std::size_t>(v)].name);
  return join(names);
}

Verdict holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

// z-score against k, or the relative error for a zero-variance estimate.
Verdict statistical(std::string name, const Estimate& est, double target, double k) {
  if (est.stderr_ > 0) {
    Verdict v{std::move(name), false, est.z_score(target), k, "z-score against " + num(target)};
    v.pass = est.within(target, k);
    return v;
  }
  Verdict v{std::move(name), false, std::abs(est.value - target) / std::max(std::abs(target), 1e-300), 1e-12,
            "zero-variance estimate, relative error against " + num(target)};
  v.pass = est.within(target, k);
  return v;
}

// Finite-t estimate against the t -> 0 limit: relative error within the
// relative tolerance (default 2%) plus the statistical allowance.
Verdict near_limit(std::string name, const Estimate& est, double limit, const ExperimentConfig& c) {
  const double rel = std::abs(est.value - limit) / limit;
  const double allowed = c.relative_tolerance.value_or(0.02) + c.tolerance * est.stderr_ / limit;
  return at_most(std::move(name), rel, allowed, "relative error against the limit mass " + num(limit));
}

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& report, std::string name) : report_(report), name_(std::move(name)) {}
  ~Stopwatch() { report_.timings.emplace_back(name_, elapsed()); }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  RunReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct LoadedModel {
  WeightedSncModel model;
  std::optional<ResidueAnchor> anchor;
  std::string source;  // text hashed into the report
};

LoadedModel load_model(const ExperimentConfig& c) {
  if (c.model_path) {
    std::ifstream in(*c.model_path);
    if (!in) throw ConfigError("cannot open model file " + c.model_path->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto spec = parse_model_spec(buf.str());
    return {std::move(spec.model), std::move(spec.anchor), buf.str()};
  }
  if (c.preset) {
    auto m = presets::by_name(*c.preset, c.n);
    return {m, std::nullopt, format_model_spec(m)};
  }
  throw ConfigError(c.command + ": give --model or --preset");
}

LocalChart make_chart(std::vector<std::int64_t> b, std::vector<Rational> a, double t) {
  LocalChart lc;
  if (a.empty()) a.assign(b.size(), Rational(0));
  lc.chart.b = std::move(b);
  lc.chart.a = std::move(a);
  lc.t = t;
  lc.chart.validate();
  return lc;
}

std::optional<LocalChart> chart_of(const ExperimentConfig& c, double t) {
  if (!c.b.empty()) return make_chart(c.b, c.a, t);
  if (c.preset && *c.preset == "annulus") return make_chart({1, 1}, {}, t);
  return std::nullopt;
}

std::vector<double> schedule_or(const ExperimentConfig& c, std::vector<double> fallback) {
  return c.t_schedule.empty() ? fallback : c.t_schedule;
}

// Pushforward cdf of the first chart coordinate of the active face under the
// uniform measure: u = b_1 w_1 is a barycentric coordinate.
std::function<double(double)> uniform_face_cdf(const SimplexHistogram& h) {
  const double b1 = static_cast<double>(h.b.at(1));
  const int d = h.dim();
  return [b1, d](double x) { return simplex_marginal_cdf(d, std::clamp(b1 * x, 0.0, 1.0)); };
}

// ---------------------------------------------------------------------------
// Subcommands.

void cmd_dual_complex(const ExperimentConfig&, RunReport& r, const LoadedModel& lm) {
  const auto dc = build_dual_complex(lm.model);
  std::ostringstream csv;
  csv << "face,dim,label,J,b,b_sigma,volume\n";
  for (std::size_t i = 0; i < dc.size(); ++i) {
    const auto& f = dc.face(static_cast<int>(i));
    csv << i << "," << f.dim() << "," << f.label << "," << face_name(lm.model, f.vertices) << ","
        << join(f.simplex.multiplicities()) << "," << f.simplex.b_sigma() << "," << to_string(simplex_volume(f.simplex))
        << "\n";
  }
  r.artifacts.push_back({"dual-complex.csv", csv.str()});
  json j{{"faces", dc.size()}, {"max_dim", dc.max_dim()}, {"euler_characteristic", dc.euler_characteristic()}};
  r.artifacts.push_back({"dual-complex.json", j.dump(2) + "\n"});
}

void cmd_weights(const ExperimentConfig&, RunReport& r, const LoadedModel& lm) {
  const auto dc = build_dual_complex(lm.model);
  const auto wd = weight_data(lm.model, dc);
  std::ostringstream csv;
  csv << "component,b,a,kappa,active\n";
  for (std::size_t i = 0; i < lm.model.size(); ++i) {
    const auto& comp = lm.model.components()[i];
    csv << comp.name << "," << comp.b << "," << to_string(comp.a) << "," << to_string(wd.kappa[i]) << ","
        << (wd.active_vertex[i] ? 1 : 0) << "\n";
  }
  r.artifacts.push_back({"weights.csv", csv.str()});
  json faces = json::array();
  for (int f : wd.active_faces) {
    const auto& face = dc.face(f);
    faces.push_back({{"face", f}, {"J", face_name(lm.model, face.vertices)}, {"label", face.label}, {"dim", face.dim()}});
    if (face.dim() != wd.d) continue;
    const auto coeffs = boundary_coefficients(lm.model, dc, wd, f);
    double worst = -INFINITY;
    for (const auto& [name, q] : coeffs) worst = std::max(worst, to_double(q));
    Verdict v{"subklt face " + std::to_string(f), is_subklt(coeffs), std::isfinite(worst) ? worst : 0.0, 1.0,
              "largest boundary coefficient, must stay below 1"};
    r.verdicts.push_back(v);
  }
  json j{{"kappa_min", to_string(wd.kappa_min)}, {"d", wd.d}, {"active_faces", faces}};
  r.artifacts.push_back({"weights.json", j.dump(2) + "\n"});
}

void cmd_limit_measure(const ExperimentConfig& c, RunReport& r, const LoadedModel& lm) {
  const auto mu = assemble_limit_measure(lm.model, c.rho);
  r.artifacts.push_back({"limit-measure.csv", to_csv(mu, lm.model)});
  r.artifacts.push_back({"limit-measure.json", to_json(mu, lm.model)});
}

void cmd_base_change(const ExperimentConfig& c, RunReport& r, const LoadedModel& lm) {
  const auto rows = base_change_report(lm.model, c.m);
  const auto dc = build_dual_complex(lm.model);
  std::ostringstream csv;
  csv << "face,J,b_sigma,e,f,g,b_prime,volume_scale,residual_scale\n";
  int efg_mismatch = 0;
  for (const auto& row : rows) {
    const auto& rep = row.report;
    csv << row.face << "," << face_name(lm.model, dc.face(row.face).vertices) << "," << gcd_of(rep.b) << "," << rep.e
        << "," << rep.f << "," << rep.g << "," << rep.b_prime << "," << rep.volume_scale << ","
        << to_string(rep.residual_scale) << "\n";
    efg_mismatch += (rep.e * rep.f * rep.g != Integer(c.m)) || (rep.e != rep.e_lattice);
  }
  r.artifacts.push_back({"base-change.csv", csv.str()});
  r.verdicts.push_back(at_most("efg = m", efg_mismatch, 0, "faces where e f g != m or e disagrees with its lattice index"));
  const auto push = pushforward_identity_check(assemble_limit_measure(lm.model, 1.0), c.m);
  double worst = 0;
  for (const auto& f : push.faces) worst = std::max(worst, std::abs(to_double(f.discrepancy())));
  Verdict pv = at_most("pushforward identity", worst, 0, "largest |p_* mu' - m^d mu| coefficient");
  pv.pass = push.pass && worst == 0;
  r.verdicts.push_back(pv);
  const auto kappa = kappa_scaling_check(lm.model, c.m);
  r.verdicts.push_back(holds("kappa scales by m", kappa.pass && kappa.active_vertices_preserved,
                             "kappa_min " + to_string(kappa.kappa_min) + " -> " + to_string(kappa.kappa_min_prime)));
}

void pencil_verdicts(const ExperimentConfig& c, const PencilSample& s, RunReport& r, const std::string& tag) {
  if (s.faces.size() < 2) return;
  double worst = 0;
  for (std::size_t a = 0; a < s.faces.size(); ++a) {
    for (std::size_t b = a + 1; b < s.faces.size(); ++b) worst = std::max(worst, s.pair_z(a, b));
  }
  r.verdicts.push_back(at_most(tag + "face masses agree", worst, c.tolerance, "largest pairwise z-score"));
  for (std::size_t k = 0; k < s.faces.size(); ++k) {
    r.verdicts.push_back(at_most(tag + "uniform on face " + join(s.faces[k].vertices, "-"), s.faces[k].ks,
                                 c.ks_threshold, "weighted KS distance of the first barycentric coordinate"));
  }
}

void cmd_sample(const ExperimentConfig& c, RunReport& r) {
  const auto ts = schedule_or(c, {is_pencil_preset(c.preset) ? 1e-5 : 1e-4});
  if (is_pencil_preset(c.preset)) {
    const auto pencil = HypersurfacePencil::by_name(*c.preset, c.n, c.epsilon);
    json reports = json::array();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto s = sample_pencil(pencil, ts[k], c.samples, shard_seed(*c.seed, k), {.bins = c.bins, .threads = c.threads});
      const std::string suffix = ts.size() == 1 ? "" : "-" + std::to_string(k);
      r.artifacts.push_back({"sample" + suffix + ".csv", to_csv(s)});
      reports.push_back(json::parse(to_json(s)));
      pencil_verdicts(c, s, r, ts.size() == 1 ? "" : "t=" + num(ts[k]) + ": ");
    }
    r.artifacts.push_back({"sample.json", reports.dump(2) + "\n"});
    return;
  }
  std::ostringstream csv;
  csv << "t,s,mass,stderr,limit_mass,z\n";
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto lc = chart_of(c, ts[k]);
    if (!lc) throw ConfigError("sample: give --b or a preset");
    const auto est = sample_fiber_measure(*lc, c.samples, shard_seed(*c.seed, k), c.threads).total();
    const double limit = chart_limit_mass(lc->chart);
    const double z = est.z_score(limit);
    csv << num(ts[k]) << "," << num(lc->s()) << "," << num(est.value) << "," << num(est.stderr_) << "," << num(limit)
        << "," << num(z) << "\n";
    r.verdicts.push_back(near_limit("mass t=" + num(ts[k]), est, limit, c));
  }
  r.artifacts.push_back({"sample.csv", csv.str()});
}

void cmd_pushforward(const ExperimentConfig& c, RunReport& r) {
  const double t = schedule_or(c, {1e-6}).front();
  auto lc = chart_of(c, t);
  if (!lc) throw ConfigError("pushforward: give --b or the annulus preset");
  const auto samples = sample_fiber_measure(*lc, c.samples, *c.seed, c.threads);
  const auto h = make_histogram(*lc, samples, c.bins);
  r.artifacts.push_back({"pushforward.csv", to_csv(h)});
  const double limit = chart_limit_mass(lc->chart);
  r.verdicts.push_back(near_limit("total mass", h.total, limit, c));
  if (h.dim() >= 1) {
    const double ks = face_coordinate_ks(*lc, samples, 1, uniform_face_cdf(h));
    r.verdicts.push_back(at_most("uniform on the active face", ks, c.ks_threshold, "weighted KS distance"));
  }
}

void cmd_fit_mass(const ExperimentConfig& c, RunReport& r) {
  const auto ts = schedule_or(c, parse_t_schedule("1e-2..1e-7"));
  std::vector<MassObservation> obs;
  std::optional<MassAsymptotics> expected;
  if (is_pencil_preset(c.preset)) {
    const auto pencil = HypersurfacePencil::by_name(*c.preset, c.n, c.epsilon);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto s = sample_pencil(pencil, ts[k], c.samples, shard_seed(*c.seed, k), {.bins = c.bins, .threads = c.threads});
      obs.push_back({ts[k], s.nu_total.value, s.nu_total.stderr_});
    }
    expected = MassAsymptotics{Rational(0), pencil.d(), 0};
  } else {
    for (std::size_t k = 0; k < ts.size(); ++k) {
      auto lc = chart_of(c, ts[k]);
      if (!lc) throw ConfigError("fit-mass: give --b or a preset");
      const auto est = sample_fiber_measure(*lc, c.samples, shard_seed(*c.seed, k), c.threads).total();
      obs.push_back({ts[k], est.value * lc->nu_scale(), est.stderr_ * lc->nu_scale()});
      if (!expected) expected = predicted_mass_asymptotics(lc->chart);
    }
  }
  std::ostringstream csv;
  csv << "t,nu,stderr\n";
  for (const auto& o : obs) csv << num(o.t) << "," << num(o.nu) << "," << num(o.stderr_) << "\n";
  r.artifacts.push_back({"fit-mass.csv", csv.str()});
  const auto fit = fit_mass_asymptotics(obs);
  r.artifacts.push_back({"fit-mass.json", to_json(fit)});
  r.verdicts.push_back(at_most("kappa_min", std::abs(fit.kappa_min_hat - to_double(expected->kappa_min)), kKappaTolerance,
                               "expected " + to_string(expected->kappa_min)));
  Verdict d = at_most("d", std::abs(fit.d_raw - expected->d), 0.25, "expected " + std::to_string(expected->d) +
                                                                         ", rounded " + std::to_string(fit.d_hat));
  d.pass = fit.d_hat == expected->d && fit.d_confident;
  r.verdicts.push_back(d);
  if (expected->c > 0) {
    r.verdicts.push_back(at_most("c", std::abs(fit.c_hat / expected->c - 1), c.relative_tolerance.value_or(0.02),
                                 "relative error against " + num(expected->c)));
  }
}

void cmd_polar_check(const ExperimentConfig& c, RunReport& r) {
  Rng rng(*c.seed);
  std::ostringstream csv;
  csv << "function,decomposition,b,lhs,stderr,rhs,discrepancy,z\n";
  auto record = [&](std::size_t k, const char* which, const std::vector<std::int64_t>& b, const PolarCheck& pc) {
    csv << k << "," << which << "," << join(b) << "," << num(pc.lhs.value) << "," << num(pc.lhs.stderr_) << ","
        << num(pc.rhs) << "," << num(pc.discrepancy()) << "," << num(pc.z_score()) << "\n";
    const std::string name = std::string(which) + " function " + std::to_string(k);
    if (c.relative_tolerance) {
      r.verdicts.push_back(at_most(name, pc.discrepancy(), *c.relative_tolerance, "relative discrepancy"));
    } else {
      r.verdicts.push_back(at_most(name, pc.z_score(), c.tolerance,
                                   "z-score, relative discrepancy " + num(pc.discrepancy())));
    }
  };
  for (std::size_t k = 0; k < c.functions; ++k) {
    std::vector<std::int64_t> b = c.b;
    if (b.empty()) {
      const std::size_t p = 1 + rng.below(2);
      for (std::size_t i = 0; i <= p; ++i) b.push_back(1 + static_cast<std::int64_t>(rng.below(3)));
    }
    const auto f = random_trig_test_function(b, rng);
    const double s = 0.65 * static_cast<double>(std::accumulate(b.begin(), b.end(), std::int64_t{0}));
    record(k, "torus", b, torus_decomposition_check(f, c.samples, shard_seed(*c.seed, 2 * k), c.threads));
    record(k, "fiber", b, polar_decomposition_check(b, f, s, 1.0, c.samples, shard_seed(*c.seed, 2 * k + 1), c.threads));
  }
  if (c.b.size() == 1) {
    const std::int64_t b = c.b.front();
    const std::complex<double> t = std::polar(0.01, 1.0);
    double mass_error = 0, root_error = 0;
    for (const auto& pt : point_fiber(b, t)) {
      mass_error = std::max(mass_error, std::abs(pt.mass - 1.0 / static_cast<double>(b * b)));
      root_error = std::max(root_error, std::abs(std::pow(pt.z, static_cast<double>(b)) - t) / std::abs(t));
    }
    r.verdicts.push_back(at_most("point fiber masses", mass_error, 0, "each point carries 1/b^2"));
    r.verdicts.push_back(at_most("point fiber roots", root_error, 1e-12, "relative |z^b - t|"));
  }
  r.artifacts.push_back({"polar-check.csv", csv.str()});
}

// Random bidisc sequences z_k = (c_0 k^-alpha (log k)^g_0, c_1 k^-beta (log k)^g_1)
// compared against neighborhoods of a target slope; returns disagreements.
int random_sequence_disagreements(std::size_t count, std::uint64_t seed, std::ostringstream* csv) {
  Rng rng(seed);
  int bad = 0;
  for (std::size_t trial = 0; trial < count; ++trial) {
    const double alpha = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 3);
    const double beta = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.1, 3);
    const double c0 = std::log(rng.uniform(0.1, 0.9)), c1 = std::log(rng.uniform(0.1, 0.9));
    const double g0 = rng.uniform(-2, 2), g1 = rng.uniform(-2, 2);
    const BidiscSequence seq{[=](double x) {
      return std::pair{c0 - alpha * x + g0 * std::log(x) * (alpha > 0), c1 - beta * x + g1 * std::log(x) * (beta > 0)};
    }};
    double zeta = rng.uniform(0.1, 4);
    if (alpha > 0 && beta > 0) {
      zeta = beta / alpha;
      if (rng.uniform() < 0.5) zeta *= rng.uniform() < 0.5 ? rng.uniform(0.5, 0.999) : rng.uniform(1.001, 2);
    }
    const bool a = hybrid_converges(seq, zeta / (1 + zeta));
    const bool b = converges_by_basis(seq, zeta);
    bad += a != b;
    if (csv) {
      *csv << trial << "," << num(alpha) << "," << num(beta) << "," << num(zeta) << "," << a << "," << b << "\n";
    }
  }
  return bad;
}

LaurentPolynomial random_laurent(Rng& rng) {
  std::map<int, Complex> coeffs;
  const int lo = static_cast<int>(rng.below(7)) - 3;
  const int len = 1 + static_cast<int>(rng.below(4));
  for (int e = lo; e < lo + len; ++e) coeffs[e] = std::polar(rng.uniform(0.2, 3), rng.uniform(0, 2 * kPi));
  return LaurentPolynomial(std::move(coeffs));
}

void hybrid_verdicts(const std::vector<double>& zetas, std::size_t sequences, std::uint64_t seed, RunReport& r,
                     std::ostringstream* csv) {
  const HybridOptions opt;
  for (double zeta : zetas) {
    const BidiscSequence seq{[zeta](double x) { return std::pair{-x, -zeta * x}; }};
    const double target = zeta / (1 + zeta);
    const bool ok = hybrid_converges(seq, target) && !hybrid_converges(seq, target + 0.01) && converges_by_basis(seq, zeta);
    Verdict v = at_most("E301 zeta=" + num(zeta), std::abs(bidisc_log(-opt.x_max, -zeta * opt.x_max) - target),
                        opt.tolerance, "|Log(z_k) - zeta/(1+zeta)| at the last term");
    v.pass = v.pass && ok;
    r.verdicts.push_back(v);
  }
  r.verdicts.push_back(at_most("random sequences", random_sequence_disagreements(sequences, seed, csv), 0,
                               "disagreements with neighborhood-basis membership out of " + std::to_string(sequences)));
  Rng rng(splitmix64(seed));
  double mult = 0, circle = 0;
  for (int k = 0; k < 2000; ++k) {
    const auto f = random_laurent(rng), g = random_laurent(rng);
    const double rr = rng.uniform(0.05, 0.95);
    const Complex z = std::polar(rr * std::exp(-rng.uniform(0, 20)), rng.uniform(0, 2 * kPi));
    const double prod = hybrid_seminorm(f, z, rr) * hybrid_seminorm(g, z, rr);
    mult = std::max(mult, std::abs(hybrid_seminorm(f * g, z, rr) - prod) / std::max(prod, 1e-300));
    circle = std::max(circle, std::abs(hybrid_seminorm(LaurentPolynomial::monomial(1), z, rr) / rr - 1));
  }
  r.verdicts.push_back(at_most("seminorm multiplicative", mult, 1e-12, "largest relative deviation, 2000 pairs"));
  r.verdicts.push_back(at_most("|t| = r", circle, 1e-12, "largest relative deviation"));
}

void cmd_hybrid_check(const ExperimentConfig& c, RunReport& r) {
  std::ostringstream csv;
  csv << "trial,alpha,beta,zeta,hybrid,basis\n";
  hybrid_verdicts(c.zetas, c.sequences, *c.seed, r, &csv);
  r.artifacts.push_back({"hybrid-check.csv", csv.str()});
}

struct SkeletonSummary {
  int branching = 0;
  int open = 0;
  int components = 0;
};

SkeletonSummary summarize(const TriangulatedSkeleton& sk) {
  SkeletonSummary s;
  std::vector<int> parent(sk.cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  for (const auto& ridge : sk.ridges) {
    s.branching += ridge.cells.size() > 2;
    s.open += ridge.cells.size() < 2;
    for (std::size_t i = 1; i < ridge.cells.size(); ++i) parent[static_cast<std::size_t>(find(ridge.cells[i]))] = find(ridge.cells[0]);
  }
  for (std::size_t i = 0; i < parent.size(); ++i) s.components += find(static_cast<int>(i)) == static_cast<int>(i);
  return s;
}

double density_spread(const SkeletalMeasure& mu) {
  double lo = INFINITY, hi = 0;
  for (const auto& e : mu.entries) {
    const double rho = e.residual_mass / to_double(Rational(e.b_sigma));
    lo = std::min(lo, rho);
    hi = std::max(hi, rho);
  }
  return mu.entries.empty() || lo <= 0 ? 0 : hi / lo - 1;
}

void cmd_skeleton_check(const ExperimentConfig& c, RunReport& r, const LoadedModel& lm) {
  const auto dc = build_dual_complex(lm.model);
  const auto sk = c.subdivide ? barycentric_subdivide(lm.model, dc) : skeleton_of(lm.model, dc);
  const auto summary = summarize(sk);
  r.verdicts.push_back(at_most("nonbranching", summary.branching, 0, "ridges in more than two top cells"));
  r.verdicts.push_back(at_most("strongly connected", summary.components - 1, 0, "extra chain components"));
  r.verdicts.push_back(at_most("closed", summary.open, 0, "ridges in a single top cell"));

  int anchor = 0;
  double rho = c.rho;
  if (lm.anchor) {
    anchor = find_anchor_cell(lm.model, dc, sk, *lm.anchor);
    rho = lm.anchor->rho;
  }
  std::vector<double> residues(sk.cells.size(), rho);
  int non_reduced = 0;
  for (const auto& cell : sk.cells) non_reduced += cell.b_sigma != 1;
  try {
    residues = residue_chain_propagate(sk, anchor, rho);
    double worst = 0;
    for (double x : residues) worst = std::max(worst, std::abs(x - rho));
    r.verdicts.push_back(at_most("residue propagation", worst, 0, "largest |Res| deviation from the anchor"));
  } catch (const SkeletonError& e) {
    r.verdicts.push_back({"residue propagation", false, static_cast<double>(non_reduced), 0,
                          std::string(e.what()) + "; top cells with b_sigma != 1 counted"});
  }
  std::ostringstream csv;
  csv << "cell,vertices,b_sigma,volume,source_face,residue\n";
  for (std::size_t k = 0; k < sk.cells.size(); ++k) {
    const auto& cell = sk.cells[k];
    csv << k << "," << join(cell.vertices) << "," << cell.b_sigma << "," << to_string(cell.volume) << ","
        << cell.source_face << "," << num(residues[k]) << "\n";
  }
  r.artifacts.push_back({"skeleton-check.csv", csv.str()});
  const auto mu = measure_from_residues(lm.model, dc, sk, residues);
  const double spread = density_spread(mu);
  Verdict u = at_most("uniform limit measure", spread, 1e-12, "max/min density with respect to lambda_sigma, minus 1");
  u.pass = is_uniform(mu);
  r.verdicts.push_back(u);
  r.artifacts.push_back({"skeleton-measure.csv", to_csv(mu, lm.model)});
}

// ---------------------------------------------------------------------------
// Acceptance suites.

void for_each_vector(std::int64_t max_entry, std::size_t max_len,
                     const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::int64_t> b(len, 1);
    while (true) {
      fn(b);
      std::size_t i = 0;
      while (i < len && b[i] == max_entry) b[i++] = 1;
      if (i == len) break;
      ++b[i];
    }
  }
}

void suite_lattice(RunReport& r) {
  Stopwatch sw(r, "lattice");
  std::ostringstream csv;
  csv << "b,volume,lattice_index\n";
  int mismatches = 0, count = 0;
  for_each_vector(6, 4, [&](const std::vector<std::int64_t>& b) {
    const ZSimplex s(b);
    const Rational vol = simplex_volume(s);
    const Integer index = lattice_index(b);
    // The index oracle predicts Vol = 1 / (p! [T : phi(T)]).
    mismatches += vol != Rational(Integer(1), factorial(s.dim()) * index);
    ++count;
    csv << join(b) << "," << to_string(vol) << "," << index << "\n";
  });
  r.artifacts.push_back({"lattice.csv", csv.str()});
  r.verdicts.push_back(at_most("simplex volume identity", mismatches, 0,
                               std::to_string(count) + " vectors, entries <= 6, length <= 4"));
  r.verdicts.push_back(at_most("lattice runtime", sw.elapsed(), 1.0, "seconds"));
}

void chart_mass_verdicts(RunReport& r, const LocalChart& base, const std::vector<double>& ts, std::size_t n,
                         std::uint64_t seed, unsigned threads, double target, std::vector<MassObservation>& obs,
                         const std::string& csv_name) {
  std::ostringstream csv;
  csv << "t,mass,stderr,nu,nu_stderr\n";
  for (std::size_t k = 0; k < ts.size(); ++k) {
    auto lc = base;
    lc.t = ts[k];
    const auto est = sample_fiber_measure(lc, n, shard_seed(seed, k), threads).total();
    if (target > 0) {
      r.verdicts.push_back(statistical("mass t=" + num(ts[k]), est, target, 3));
    }
    obs.push_back({ts[k], est.value * lc.nu_scale(), est.stderr_ * lc.nu_scale()});
    csv << num(ts[k]) << "," << num(est.value) << "," << num(est.stderr_) << "," << num(obs.back().nu) << ","
        << num(obs.back().stderr_) << "\n";
  }
  r.artifacts.push_back({csv_name, csv.str()});
}

void suite_annulus(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "annulus");
  std::vector<MassObservation> obs;
  chart_mass_verdicts(r, make_chart({1, 1}, {}, 1e-2), parse_t_schedule("1e-2..1e-6"), 100000, seed, threads, 1.0, obs,
                      "annulus.csv");
  const auto fit = fit_mass_asymptotics(obs);
  Verdict d = at_most("annulus d", std::abs(fit.d_raw - 1), 0.25, "unrounded exponent against 1");
  d.pass = fit.d_hat == 1 && fit.d_confident;
  r.verdicts.push_back(d);
  r.verdicts.push_back(at_most("annulus kappa_min", std::abs(fit.kappa_min_hat), kKappaTolerance));
  r.verdicts.push_back(at_most("annulus c", std::abs(fit.c_hat / (2 * kPi) - 1), 0.02, "relative error against 2 pi"));
  r.verdicts.push_back(at_most("annulus runtime", sw.elapsed(), 60, "seconds"));
}

void suite_chart(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "chart");
  const auto base = make_chart({1, 1}, {0, 1}, 1e-6);
  const double closed = residual_mass_closed_form(base.chart);
  r.verdicts.push_back(at_most("closed-form residual mass", std::abs(closed / kPi - 1), 4e-16, "relative error against pi"));
  const auto est = sample_fiber_measure(base, 100000, seed, threads).total();
  r.verdicts.push_back(at_most("chart mass at t=1e-6", std::abs(est.value / kPi - 1), 0.02, "relative error against pi"));
  r.verdicts.push_back(statistical("chart mass against pi(1-t^2)", est, kPi * (1 - 1e-12), 3));
  std::vector<MassObservation> obs;
  chart_mass_verdicts(r, base, parse_t_schedule("1e-2..1e-6"), 100000, splitmix64(seed), threads, 0, obs, "chart.csv");
  const auto fit = fit_mass_asymptotics(obs);
  Verdict d = at_most("chart d", std::abs(fit.d_raw), 0.25, "unrounded exponent against 0");
  d.pass = fit.d_hat == 0 && fit.d_confident;
  r.verdicts.push_back(d);
}

void suite_pushforward(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "pushforward");
  const auto lc = make_chart({1, 2}, {}, 1e-6);
  const auto samples = sample_fiber_measure(lc, 1000000, seed, threads);
  const auto h = make_histogram(lc, samples, 20);
  r.artifacts.push_back({"pushforward.csv", to_csv(h)});
  r.verdicts.push_back(statistical("histogram mass", h.total, 0.5, 3));
  r.verdicts.push_back(at_most("histogram KS", face_coordinate_ks(lc, samples, 1, uniform_face_cdf(h)), 0.02,
                               "against the uniform law of w_1 on [0, 1/2]"));
}

void suite_decay(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "decay");
  auto lc = make_chart({1, 1}, {Rational(1, 2), 1}, 1e-2);
  lc.kappa_ref = Rational(0);
  lc.d_ref = 0;
  const auto bound = decay_bound(lc);
  std::ostringstream csv;
  csv << "t,mass,stderr,normalized\n";
  const auto ts = parse_t_schedule("1e-2..1e-6");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    lc.t = ts[k];
    const auto est = sample_fiber_measure(lc, 100000, shard_seed(seed, k), threads).total();
    const double norm = bound.normalized(est.value, ts[k], 0);
    const double err = bound.normalized(est.stderr_, ts[k], 0);
    csv << num(ts[k]) << "," << num(est.value) << "," << num(est.stderr_) << "," << num(norm) << "\n";
    r.verdicts.push_back(at_most("mass/|t| bounded at t=" + num(ts[k]), norm, bound.constant + 3 * err,
                                 "against the explicit constant " + num(bound.constant)));
  }
  r.artifacts.push_back({"decay.csv", csv.str()});
}

void suite_polar(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "polar");
  ExperimentConfig c;
  c.seed = seed;
  c.samples = 1000000;
  c.threads = threads;
  c.functions = 10;
  c.relative_tolerance = 0.01;
  cmd_polar_check(c, r);
  c.functions = 0;
  c.b = {3};
  RunReport exact;
  cmd_polar_check(c, exact);
  for (auto& v : exact.verdicts) r.verdicts.push_back(std::move(v));
}

void suite_base_change(RunReport& r) {
  Stopwatch sw(r, "base-change");
  int efg = 0, push = 0, cases = 0;
  for_each_vector(4, 3, [&](const std::vector<std::int64_t>& b) {
    std::vector<Component> comps;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < b.size(); ++i) {
      comps.push_back({"E" + std::to_string(i), b[i], 0});
      names.push_back(comps.back().name);
    }
    std::vector<Stratum> strata;
    for (std::uint32_t mask = 1; mask < (1u << b.size()); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Stratum st;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (mask & (1u << i)) st.components.push_back(names[i]);
      }
      strata.push_back(st);
    }
    const WeightedSncModel model(comps, strata);
    const auto mu = assemble_limit_measure(model, 1.0);
    for (std::int64_t m = 1; m <= 6; ++m) {
      const Integer fg = gcd(Integer(m), gcd_of(b));
      for (std::int64_t g = 1; g <= m; ++g) {
        if (fg % g != 0) continue;
        const auto rep = face_base_change(b, m, g);
        efg += rep.e * rep.f * rep.g != Integer(m);
        const auto check = pushforward_identity_check(mu, m, {{mu.entries.front().face, g}});
        push += !check.pass;
        ++cases;
      }
    }
  });
  r.verdicts.push_back(at_most("efg = m", efg, 0, std::to_string(cases) + " cases"));
  r.verdicts.push_back(at_most("pushforward identity", push, 0, "failing cases, exact rational arithmetic"));
  r.verdicts.push_back(at_most("base-change runtime", sw.elapsed(), 1.0, "seconds"));
}

void suite_pencil(RunReport& r, std::uint64_t seed, unsigned threads) {
  Stopwatch sw(r, "pencil");
  ExperimentConfig c;
  const auto pencil = HypersurfacePencil::coordinate_pencil(2);
  const auto s = sample_pencil(pencil, 1e-5, 1000000, seed, {.threads = threads});
  r.artifacts.push_back({"pencil.csv", to_csv(s)});
  pencil_verdicts(c, s, r, "pencil ");
  const auto model = pencil.model();
  const auto sk = skeleton_of(model, build_dual_complex(model));
  const auto res = residue_chain_propagate(sk, 0, 1.0);
  double worst = 0;
  for (double x : res) worst = std::max(worst, std::abs(x - res.front()));
  r.verdicts.push_back(at_most("3-cycle residues constant", worst, 0, std::to_string(res.size()) + " edges"));
  r.verdicts.push_back(at_most("pencil runtime", sw.elapsed(), 300, "seconds"));
}

void suite_hybrid(RunReport& r, std::uint64_t seed) {
  Stopwatch sw(r, "hybrid");
  hybrid_verdicts({0.5, 1.0, 2.0}, 1000, seed, r, nullptr);
}

void suite_non_semistable(RunReport& r) {
  Stopwatch sw(r, "non-semistable");
  auto cycle = [](std::int64_t b0, std::int64_t b1, std::int64_t b2) {
    return WeightedSncModel({{"E0", b0, 0}, {"E1", b1, 0}, {"E2", b2, 0}},
                            {{{"E0", "E1"}, 1}, {{"E0", "E2"}, 1}, {{"E1", "E2"}, 1}});
  };
  const auto bad = cycle(2, 2, 1);
  const auto dc = build_dual_complex(bad);
  const auto sk = skeleton_of(bad, dc);
  const auto mu = measure_from_residues(bad, dc, sk, std::vector<double>(sk.cells.size(), 1.0));
  const double spread = density_spread(mu);
  Verdict v{"b=(2,2,1) limit measure non-uniform", !is_uniform(mu) && spread > 0, spread, 0,
            "max/min density minus 1, must be positive"};
  r.verdicts.push_back(v);
  bool refused = false;
  try {
    residue_chain_propagate(sk, 0, 1.0);
  } catch (const SkeletonError&) {
    refused = true;
  }
  r.verdicts.push_back(holds("propagation refuses b_sigma != 1", refused));
  const auto good = cycle(1, 1, 1);
  const auto gdc = build_dual_complex(good);
  const auto gsk = skeleton_of(good, gdc);
  const auto gmu = measure_from_residues(good, gdc, gsk, residue_chain_propagate(gsk, 0, 1.0));
  r.verdicts.push_back(at_most("b=(1,1,1) limit measure uniform", density_spread(gmu), 1e-12));
}

void run_suite(const std::string& name, std::uint64_t seed, unsigned threads, RunReport& r) {
  if (name == "lattice") return suite_lattice(r);
  if (name == "annulus") return suite_annulus(r, seed, threads);
  if (name == "chart") return suite_chart(r, seed, threads);
  if (name == "pushforward") return suite_pushforward(r, seed, threads);
  if (name == "decay") return suite_decay(r, seed, threads);
  if (name == "polar") return suite_polar(r, seed, threads);
  if (name == "base-change") return suite_base_change(r);
  if (name == "pencil") return suite_pencil(r, seed, threads);
  if (name == "hybrid") return suite_hybrid(r, seed);
  if (name == "non-semistable") return suite_non_semistable(r);
  if (name == "all") {
    for (const auto& s : kSuites) {
      if (s == "all") continue;
      RunReport part;
      run_suite(s, seed, threads, part);
      for (auto& v : part.verdicts) {
        v.name = s + ": " + v.name;
        r.verdicts.push_back(std::move(v));
      }
      for (auto& t : part.timings) r.timings.push_back(std::move(t));
      for (auto& a : part.artifacts) r.artifacts.push_back(std::move(a));
    }
    return;
  }
  throw ConfigError("unknown suite '" + name + "'");
}

std::string hex(const unsigned char* data, unsigned len) {
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(data[i]);
  return out.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  const std::string str(s);
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + str + "'");
  }
  if (used != str.size()) throw ConfigError("not a number: '" + str + "'");
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& command_names() { return kCommands; }
const std::vector<std::string>& suite_names() { return kSuites; }

bool is_sampling_command(const std::string& command) {
  return command == "sample" || command == "pushforward" || command == "fit-mass" || command == "polar-check" ||
         command == "hybrid-check";
}

void ExperimentConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (is_sampling_command(command) && !seed) throw ConfigError(command + ": --seed is required");
  if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (relative_tolerance && !(*relative_tolerance > 0)) throw ConfigError("relative tolerance must be positive");
  if (!(ks_threshold > 0)) throw ConfigError("KS threshold must be positive");
  if (samples == 0) throw ConfigError("sample count must be positive");
  if (bins == 0) throw ConfigError("bin count must be positive");
  if (m < 1) throw ConfigError("base-change degree must be at least 1");
  if (n < 1) throw ConfigError("pencil dimension must be at least 1");
  if (!(epsilon > 0)) throw ConfigError("pencil epsilon must be positive");
  if (!(rho > 0)) throw ConfigError("anchor residue must be positive");
  if (!a.empty() && a.size() != b.size()) throw ConfigError("--a needs one entry per --b entry");
  for (double t : t_schedule) {
    if (!(t > 0 && t < 1)) throw ConfigError("t values must lie in (0, 1)");
  }
  if (command == "verify" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw ConfigError("unknown suite '" + suite + "'");
  }
}

std::string ExperimentConfig::echo() const {
  json j;
  j["command"] = command;
  j["model"] = model_path ? json(model_path->string()) : json(nullptr);
  j["preset"] = preset ? json(*preset) : json(nullptr);
  j["n"] = n;
  j["epsilon"] = epsilon;
  j["b"] = b;
  std::vector<std::string> as;
  for (const auto& q : a) as.push_back(to_string(q));
  j["a"] = as;
  j["t"] = t_schedule;
  j["samples"] = samples;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["threads"] = threads;
  j["bins"] = bins;
  j["tolerance"] = tolerance;
  j["relative_tolerance"] = relative_tolerance ? json(*relative_tolerance) : json(nullptr);
  j["ks_threshold"] = ks_threshold;
  j["m"] = m;
  j["functions"] = functions;
  j["sequences"] = sequences;
  j["zetas"] = zetas;
  j["rho"] = rho;
  j["subdivide"] = subdivide;
  j["suite"] = suite;
  return j.dump();
}

Verdict at_most(std::string name, double discrepancy, double threshold, std::string detail) {
  return {std::move(name), discrepancy <= threshold, discrepancy, threshold, std::move(detail)};
}

bool RunReport::ok() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["config"] = json::parse(config_echo.empty() ? "{}" : config_echo);
  j["input_hash"] = input_hash;
  j["ok"] = ok();
  json vs = json::array();
  for (const auto& v : verdicts) {
    vs.push_back({{"name", v.name},
                  {"pass", v.pass},
                  {"discrepancy", std::isfinite(v.discrepancy) ? json(v.discrepancy) : json(num(v.discrepancy))},
                  {"threshold", v.threshold},
                  {"detail", v.detail}});
  }
  j["verdicts"] = vs;
  json ts = json::object();
  for (const auto& [name, secs] : timings) ts[name] = secs;
  j["timings"] = ts;
  json as = json::array();
  for (const auto& a : artifacts) as.push_back(a.name);
  j["artifacts"] = as;
  return j.dump(2) + "\n";
}

std::string git_blob_hash(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("git_blob_hash: cannot allocate digest context");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("git_blob_hash: digest failed");
  return hex(digest, len);
}

std::vector<double> parse_t_schedule(std::string_view text) {
  text = trim(text);
  const auto dots = text.find("..");
  std::vector<double> out;
  if (dots != std::string_view::npos) {
    const double hi = parse_double(trim(text.substr(0, dots)));
    const double lo = parse_double(trim(text.substr(dots + 2)));
    if (!(hi > 0 && lo > 0 && hi < 1 && lo < 1)) throw ConfigError("t range must lie in (0, 1)");
    const double a = std::log10(hi), b = std::log10(lo);
    const long steps = std::lround(std::abs(a - b));
    if (std::abs(std::abs(a - b) - static_cast<double>(steps)) > 1e-9) {
      throw ConfigError("t range endpoints must be a whole number of decades apart");
    }
    const double dir = b < a ? -1 : 1;
    for (long k = 0; k <= steps; ++k) out.push_back(std::pow(10.0, a + dir * static_cast<double>(k)));
  } else {
    for (auto piece : split(text, ',')) out.push_back(parse_double(piece));
  }
  for (double t : out) {
    if (!(t > 0 && t < 1)) throw ConfigError("t values must lie in (0, 1)");
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto piece : split(text, ',')) {
    const double x = parse_double(piece);
    if (x != std::floor(x)) throw ConfigError("not an integer: '" + std::string(piece) + "'");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto piece : split(text, ',')) {
    try {
      out.push_back(parse_rational(piece));
    } catch (const std::exception&) {
      throw ConfigError("not a rational: '" + std::string(piece) + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (auto piece : split(text, ',')) out.push_back(parse_double(piece));
  return out;
}

RunReport run(const ExperimentConfig& config) {
  config.validate();
  RunReport r;
  r.command = config.command;
  r.config_echo = config.echo();
  const auto& cmd = config.command;
  const bool needs_model = cmd == "dual-complex" || cmd == "weights" || cmd == "limit-measure" ||
                           cmd == "base-change" || cmd == "skeleton-check";
  std::optional<LoadedModel> lm;
  if (needs_model) lm = load_model(config);
  r.input_hash = git_blob_hash(r.config_echo + "\n" + (lm ? lm->source : std::string()));

  {
    Stopwatch sw(r, "total");
    if (cmd == "dual-complex") cmd_dual_complex(config, r, *lm);
    else if (cmd == "weights") cmd_weights(config, r, *lm);
    else if (cmd == "limit-measure") cmd_limit_measure(config, r, *lm);
    else if (cmd == "base-change") cmd_base_change(config, r, *lm);
    else if (cmd == "sample") cmd_sample(config, r);
    else if (cmd == "pushforward") cmd_pushforward(config, r);
    else if (cmd == "fit-mass") cmd_fit_mass(config, r);
    else if (cmd == "polar-check") cmd_polar_check(config, r);
    else if (cmd == "hybrid-check") cmd_hybrid_check(config, r);
    else if (cmd == "skeleton-check") cmd_skeleton_check(config, r, *lm);
    else run_suite(config.suite, config.seed.value_or(kDefaultSuiteSeed), config.threads, r);
  }
  return r;
}

void write_outputs(const RunReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
  };
  for (const auto& a : report.artifacts) write(a.name, a.content);
  write("report.json", report.to_json());
}

}  // namespace tropvol
