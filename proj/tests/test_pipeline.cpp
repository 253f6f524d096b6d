#include "csusy/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace csusy;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const Check* find(const PipelineResult& r, const std::string& name) {
  for (const Check& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

RunConfig morse_custom(Index n) {
  RunConfig c = preset("fig3");
  c.model = CustomModel{"4*(1 - exp(-x))^2", "", 4.0};
  c.grid->n = n;
  return c;
}

}  // namespace

TEST_CASE("custom Morse expression reproduces the closed-form run") {
  const PipelineResult r = run_pipeline(morse_custom(1501));
  for (const Check& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.value);
    CHECK(c.passed);
  }
  REQUIRE(r.h1_bound.size() == 3);
  CHECK(std::abs(r.h1_bound[0] - 1.0) < 2e-3);
  CHECK(std::abs(r.h1_bound[1] - 1.75) < 2e-3);
  CHECK(std::abs(r.h1_bound[2] - 3.75) < 2e-3);
  CHECK(r.states.size() == 3);
  CHECK(find(r, "analytic_levels") == nullptr);  // no closed-form levels for custom models
}

TEST_CASE("custom harmonic potential") {
  RunConfig c = parse_config(R"(
[model]
kind = custom
potential = x^2
threshold = 12
[ermakov]
epsilon = 0.5
lambda = 0.5
a = 1
c = 1
[grid]
x_min = -9
x_max = 9
n = 2001
)");
  const PipelineResult r = run_pipeline(c);
  CHECK(r.passed());
  CHECK(r.threshold == 12.0);
  REQUIRE(r.h0_bound.size() >= 5);
  CHECK(std::abs(r.h0_bound[0] - 1.0) < 1e-3);
  CHECK(std::abs(r.h1_bound[0] - 0.5) < 1e-3);
}

TEST_CASE("sample files") {
  const auto dir = std::filesystem::temp_directory_path() / "csusy_pipeline_samples";
  std::filesystem::create_directories(dir);
  const RunConfig ref = morse_custom(1501);
  {
    std::ofstream out(dir / "morse.csv");
    out << "# x, V\n";
    const Grid1D g = make_grid(ref.grid->x_min, ref.grid->x_max, ref.grid->n);
    char buf[64];
    for (Index i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      std::snprintf(buf, sizeof buf, "%.17g, %.17g\n", x, 4 * std::pow(1 - std::exp(-x), 2));
      out << buf;
    }
  }
  const RealFunction v = load_samples((dir / "morse.csv").string());
  CHECK(v.size() == 1501);
  RunConfig c = ref;
  c.model = CustomModel{"", (dir / "morse.csv").string(), std::nullopt};
  c.grid.reset();
  const PipelineResult r = run_pipeline(c);
  CHECK(r.passed());
  CHECK(r.threshold == doctest::Approx(4.0).epsilon(1e-6));  // min of V at the ends
  CHECK(r.grid.n == 1501);

  {
    std::ofstream out(dir / "ragged.csv");
    for (int i = 0; i < 20; ++i) out << i * i << " 1\n";
  }
  CHECK_THROWS_AS(load_samples((dir / "ragged.csv").string()), ConfigError);
  {
    std::ofstream out(dir / "short.csv");
    out << "0 1\n1 1\n";
  }
  CHECK_THROWS_AS(load_samples((dir / "short.csv").string()), ConfigError);
  CHECK_THROWS_AS(load_samples((dir / "missing.csv").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("lambda = 0 yields a real partner") {
  RunConfig c = preset("fig1");
  c.lambda = 0.0;
  c.b = 2.0;
  c.expect_pt.reset();
  const PipelineResult r = run_pipeline(c);
  const Check* real = find(r, "real_partner");
  REQUIRE(real != nullptr);
  CHECK(real->passed);
  CHECK(real->value <= 1e-8);
  CHECK(r.passed());
}

TEST_CASE("configuration errors throw") {
  RunConfig c = preset("fig3");
  c.a = c.c = 0.1;
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
  c = preset("fig1");
  c.b = 0.3;
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
  c = preset("fig1");
  c.model = CustomModel{"x^2", "", std::nullopt};
  c.grid.reset();
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
  c.grid = GridSpec{-5, 5, 201};
  c.model = CustomModel{"x^", "", std::nullopt};
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
}

TEST_CASE("a tightened tolerance names the failing check") {
  RunConfig c = preset("fig1");
  c.grid->n = 801;
  Tolerances t;
  t.riccati = 1e-30;
  const PipelineResult r = run_pipeline(c, t);
  CHECK_FALSE(r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "riccati");
}

TEST_CASE("a wrong symmetry expectation fails") {
  RunConfig c = preset("fig1");
  c.grid->n = 801;
  c.expect_pt = false;
  const PipelineResult r = run_pipeline(c);
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "pt_expectation");
}

TEST_CASE("outputs are complete and reproducible") {
  RunConfig c = preset("fig1");
  c.grid->n = 801;
  const auto base = std::filesystem::temp_directory_path() / "csusy_pipeline_out";
  std::filesystem::remove_all(base);
  write_outputs(run_pipeline(c), base / "a");
  write_outputs(run_pipeline(c), base / "b");
  for (const char* f : {"potential.csv", "spectrum.csv", "state_0.csv", "checks.csv", "summary.txt"}) {
    CAPTURE(f);
    REQUIRE(std::filesystem::exists(base / "a" / f));
    CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
  }
  CHECK(slurp(base / "a" / "potential.csv").rfind("x,re_v0,re_v1,im_v1\n", 0) == 0);
  CHECK(slurp(base / "a" / "spectrum.csv").rfind("index,re_E,im_E,residual\n", 0) == 0);
  CHECK(slurp(base / "a" / "checks.csv").rfind("name,value,relation,tolerance,passed\n", 0) == 0);

  c.outputs = {OutputKind::potential};
  write_outputs(run_pipeline(c), base / "c");
  CHECK(std::filesystem::exists(base / "c" / "potential.csv"));
  CHECK_FALSE(std::filesystem::exists(base / "c" / "spectrum.csv"));
  std::filesystem::remove_all(base);
}
