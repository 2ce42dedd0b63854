#include "doctest.h"

#include "tropvol/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace tropvol;

namespace {

ExperimentConfig config(std::string command) {
  ExperimentConfig c;
  c.command = std::move(command);
  return c;
}

const Artifact& artifact(const RunReport& r, const std::string& name) {
  for (const auto& a : r.artifacts) {
    if (a.name == name) return a;
  }
  throw std::runtime_error("missing artifact " + name);
}

const Verdict& verdict(const RunReport& r, const std::string& name) {
  for (const auto& v : r.verdicts) {
    if (v.name == name) return v;
  }
  throw std::runtime_error("missing verdict " + name);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("git blob hashes match git hash-object") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("t schedules and lists") {
  const auto ts = parse_t_schedule("1e-2..1e-7");
  REQUIRE(ts.size() == 6);
  CHECK(ts.front() == doctest::Approx(1e-2));
  CHECK(ts.back() == doctest::Approx(1e-7));
  CHECK(parse_t_schedule("1e-6..1e-3").size() == 4);
  CHECK(parse_t_schedule("0.5, 1e-3") == std::vector<double>{0.5, 1e-3});
  CHECK_THROWS_AS(parse_t_schedule("1e-2..3e-4"), ConfigError);
  CHECK_THROWS_AS(parse_t_schedule("2"), ConfigError);
  CHECK_THROWS_AS(parse_t_schedule("abc"), ConfigError);
  CHECK(parse_int_list("1,2, 3") == std::vector<std::int64_t>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
  CHECK(parse_rational_list("0,1/2") == std::vector<Rational>{Rational(0), Rational(1, 2)});
  CHECK_THROWS_AS(parse_rational_list("x"), ConfigError);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(config("nope").validate(), ConfigError);
  CHECK_THROWS_AS(config("sample").validate(), ConfigError);  // seed is mandatory
  auto c = config("sample");
  c.seed = 1;
  c.validate();
  c.tolerance = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tolerance = 3;
  c.relative_tolerance = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.relative_tolerance.reset();
  c.b = {1, 2};
  c.a = {Rational(0)};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  auto v = config("verify");
  v.suite = "unknown";
  CHECK_THROWS_AS(v.validate(), ConfigError);
  v.suite = "lattice";
  v.validate();
  CHECK_THROWS_AS(run(config("weights")), ConfigError);  // no model
  auto p = config("dual-complex");
  p.preset = "hexagon";
  CHECK_THROWS(run(p));
}

TEST_CASE("model subcommands on presets and files") {
  auto c = config("dual-complex");
  c.preset = "coordinate_pencil";
  c.n = 2;
  const auto r = run(c);
  CHECK(r.ok());
  const auto& csv = artifact(r, "dual-complex.csv").content;
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 6);
  CHECK(r.input_hash.size() == 40);

  const auto path = write_temp("tropvol_test_model.txt", "[components]\nA b=2\nB b=2 a=1\n[strata]\nA B count=2\n");
  auto w = config("weights");
  w.model_path = path;
  const auto wr = run(w);
  CHECK(wr.ok());
  CHECK(artifact(wr, "weights.csv").content == "component,b,a,kappa,active\nA,2,0,0,1\nB,2,1,1/2,0\n");

  auto b = config("base-change");
  b.model_path = path;
  b.m = 4;
  const auto br = run(b);
  CHECK(br.ok());
  CHECK(verdict(br, "pushforward identity").discrepancy == 0);

  const auto bad = write_temp("tropvol_test_bad.txt", "[components]\nA b=1\n[strata]\nA Z\n");
  w.model_path = bad;
  try {
    run(w);
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("skeleton-check verdicts") {
  auto c = config("skeleton-check");
  c.preset = "coordinate_pencil";
  c.n = 2;
  auto r = run(c);
  CHECK(r.ok());
  c.subdivide = true;
  CHECK(run(c).ok());

  const auto path = write_temp("tropvol_test_cycle.txt",
                               "[components]\nA b=2\nB b=2\nC b=1\n[strata]\nA B\nA C\nB C\n");
  auto n = config("skeleton-check");
  n.model_path = path;
  r = run(n);
  CHECK_FALSE(r.ok());
  CHECK(verdict(r, "closed").pass);
  CHECK_FALSE(verdict(r, "residue propagation").pass);
  CHECK_FALSE(verdict(r, "uniform limit measure").pass);
  CHECK(verdict(r, "uniform limit measure").discrepancy == doctest::Approx(1.0));

  auto seg = config("skeleton-check");
  seg.preset = "annulus";
  r = run(seg);
  CHECK(verdict(r, "closed").discrepancy == 2);
  CHECK_FALSE(verdict(r, "residue propagation").pass);
}

TEST_CASE("sampling outputs are reproducible") {
  auto c = config("sample");
  c.preset = "coordinate_pencil";
  c.seed = 7;
  c.samples = 30000;
  c.t_schedule = {1e-5};
  const auto a = run(c);
  c.threads = 3;
  const auto b = run(c);
  CHECK(artifact(a, "sample.csv").content == artifact(b, "sample.csv").content);
  CHECK(a.ok());
  c.seed = 8;
  CHECK(artifact(run(c), "sample.csv").content != artifact(a, "sample.csv").content);

  const auto dir = std::filesystem::temp_directory_path() / "tropvol_test_out";
  std::filesystem::remove_all(dir);
  write_outputs(a, dir);
  std::ifstream in(dir / "sample.csv");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == artifact(a, "sample.csv").content);
  CHECK(std::filesystem::exists(dir / "report.json"));
}

TEST_CASE("chart subcommands") {
  auto s = config("sample");
  s.b = {1, 1};
  s.a = {Rational(0), Rational(1)};
  s.seed = 3;
  s.samples = 20000;
  s.t_schedule = {1e-3, 1e-6};
  const auto sr = run(s);
  CHECK(sr.ok());
  CHECK(sr.verdicts.size() == 2);

  auto p = config("pushforward");
  p.b = {1, 2};
  p.seed = 4;
  p.samples = 50000;
  const auto pr = run(p);
  CHECK(pr.ok());
  CHECK(verdict(pr, "uniform on the active face").discrepancy < 0.02);

  auto f = config("fit-mass");
  f.preset = "annulus";
  f.seed = 5;
  f.samples = 20000;
  const auto fr = run(f);
  CHECK(fr.ok());
  const auto fit = nlohmann::json::parse(artifact(fr, "fit-mass.json").content);
  CHECK(fit["d_hat"] == 1);
  CHECK(fit["c_hat"].get<double>() == doctest::Approx(2 * 3.141592653589793).epsilon(0.02));

  auto bad = config("pushforward");
  bad.preset = "coordinate_pencil";
  bad.seed = 1;
  CHECK_THROWS_AS(run(bad), ConfigError);
}

TEST_CASE("polar and hybrid checks") {
  auto p = config("polar-check");
  p.seed = 11;
  p.samples = 50000;
  p.functions = 2;
  const auto pr = run(p);
  CHECK(pr.verdicts.size() == 4);
  CHECK(pr.ok());
  p.functions = 0;
  p.b = {3};
  const auto exact = run(p);
  CHECK(verdict(exact, "point fiber masses").discrepancy == 0);

  auto h = config("hybrid-check");
  h.seed = 12;
  h.sequences = 200;
  const auto hr = run(h);
  CHECK(hr.ok());
  CHECK(verdict(hr, "random sequences").discrepancy == 0);
}

TEST_CASE("report JSON carries every verdict with its discrepancy") {
  auto c = config("verify");
  c.suite = "non-semistable";
  const auto r = run(c);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["ok"] == true);
  CHECK(j["verdicts"].size() == r.verdicts.size());
  for (const auto& v : j["verdicts"]) CHECK(v.contains("discrepancy"));
  CHECK(j["config"]["suite"] == "non-semistable");
  CHECK(suite_names().back() == "all");
}
