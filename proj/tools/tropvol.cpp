// tropvol: command-line front end to the harness. Artifacts go to --out, or
// to $TROPVOL_OUT when --out is absent; with neither, only the report is
// printed. Exit status 0 when every check passes, 1 when one fails, 2 on
// invalid input.

#include "tropvol/harness.hpp"
#include "tropvol/model_spec.hpp"
#include "tropvol/snc_model.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

struct RawOptions {
  std::string model;
  std::string preset;
  std::string b;
  std::string a;
  std::string t;
  std::string zetas;
  std::uint64_t seed = 0;
  std::string out;
  bool quiet = false;
};

void add_model_options(CLI::App* sub, tropvol::ExperimentConfig& c, RawOptions& raw) {
  sub->add_option("--model", raw.model, "model file");
  sub->add_option("--preset", raw.preset, "fermat_smooth, annulus or coordinate_pencil");
  sub->add_option("--n", c.n, "dimension of the coordinate pencil");
}

void add_chart_options(CLI::App* sub, tropvol::ExperimentConfig& c, RawOptions& raw) {
  sub->add_option("--b", raw.b, "chart multiplicities, comma separated");
  sub->add_option("--a", raw.a, "chart coefficients, comma separated rationals");
  sub->add_option("--t", raw.t, "t schedule: 1e-2..1e-6 or a comma list");
  sub->add_option("--samples,-N", c.samples, "Monte-Carlo draws per t");
  sub->add_option("--bins", c.bins, "histogram bins per axis");
  sub->add_option("--epsilon", c.epsilon, "pencil parameter");
}

}  // namespace

int main(int argc, char** argv) {
  tropvol::ExperimentConfig c;
  RawOptions raw;
  CLI::App app{"Skeletal limits of fiber measures in degenerating families"};
  app.require_subcommand(1);
  app.add_option("--seed", raw.seed, "random seed");
  app.add_option("--threads", c.threads, "worker threads, 0 for all cores");
  app.add_option("--tolerance", c.tolerance, "standard errors allowed by statistical checks");
  app.add_option("--rel-tol", c.relative_tolerance, "relative tolerance for constants and polar checks");
  app.add_option("--ks", c.ks_threshold, "KS threshold for uniformity checks");
  app.add_option("--out,-o", raw.out, "output directory");
  app.add_flag("--quiet,-q", raw.quiet, "do not print the report");

  auto* dual = app.add_subcommand("dual-complex", "faces of the dual complex with volumes");
  auto* weights = app.add_subcommand("weights", "kappa_min, active subcomplex, subklt checks");
  auto* limit = app.add_subcommand("limit-measure", "skeletal measure with a uniform residual mass");
  limit->add_option("--rho", c.rho, "residual mass per top face");
  auto* base = app.add_subcommand("base-change", "base change bookkeeping and pushforward identity");
  base->add_option("--m", c.m, "degree of the base change");
  auto* sample = app.add_subcommand("sample", "fiber masses on a chart or a pencil");
  auto* push = app.add_subcommand("pushforward", "histogram of the tropicalized fiber measure");
  auto* fit = app.add_subcommand("fit-mass", "fit of the mass asymptotics over a t schedule");
  auto* polar = app.add_subcommand("polar-check", "logarithmic polar decompositions");
  polar->add_option("--b", raw.b, "multiplicities; random per function when absent");
  polar->add_option("--functions", c.functions, "number of random test functions");
  polar->add_option("--samples,-N", c.samples, "Monte-Carlo draws per check");
  auto* hybrid = app.add_subcommand("hybrid-check", "hybrid topology on the bidisc and the hybrid circle");
  hybrid->add_option("--zeta", raw.zetas, "slopes, comma separated");
  hybrid->add_option("--sequences", c.sequences, "random sequences");
  auto* skeleton = app.add_subcommand("skeleton-check", "pseudomanifold and residue propagation checks");
  skeleton->add_option("--rho", c.rho, "anchor residue when the model has none");
  skeleton->add_flag("--subdivide", c.subdivide, "use the barycentric subdivision");
  auto* verify = app.add_subcommand("verify", "run a named acceptance suite");
  verify->add_option("--suite", c.suite, "suite name or all")->required();

  for (auto* sub : {dual, weights, limit, base, skeleton}) add_model_options(sub, c, raw);
  for (auto* sub : {sample, push, fit}) {
    add_model_options(sub, c, raw);
    add_chart_options(sub, c, raw);
  }
  // Allow global flags after the subcommand name.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    c.command = app.get_subcommands().front()->get_name();
    if (!raw.model.empty()) c.model_path = raw.model;
    if (!raw.preset.empty()) c.preset = raw.preset;
    if (app.count("--seed")) c.seed = raw.seed;
    if (!raw.b.empty()) c.b = tropvol::parse_int_list(raw.b);
    if (!raw.a.empty()) c.a = tropvol::parse_rational_list(raw.a);
    if (!raw.t.empty()) c.t_schedule = tropvol::parse_t_schedule(raw.t);
    if (!raw.zetas.empty()) c.zetas = tropvol::parse_double_list(raw.zetas);
    if (!raw.out.empty()) {
      c.output_dir = raw.out;
    } else if (const char* env = std::getenv("TROPVOL_OUT"); env && *env) {
      c.output_dir = env;
    }

    const auto report = tropvol::run(c);
    if (!c.output_dir.empty()) tropvol::write_outputs(report, c.output_dir);
    if (!raw.quiet) std::cout << report.to_json();
    return report.ok() ? 0 : 1;
  } catch (const tropvol::ModelSpecError& e) {
    std::cerr << "tropvol: " << (raw.model.empty() ? "model" : raw.model) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "tropvol: " << e.what() << "\n";
  }
  return 2;
}
