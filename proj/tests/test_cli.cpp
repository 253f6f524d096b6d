// Drives the csusy executable as a black box.
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "csusy_cli_test";

int run(const std::string& args, const std::string& tag, const fs::path& cwd = kWork) {
  fs::create_directories(cwd);
  const std::string cmd = "cd \"" + cwd.string() + "\" && \"" + CSUSY_CLI_PATH + "\" " + args + " > \"" + (kWork / (tag + ".out")).string() +
                          "\" 2> \"" + (kWork / (tag + ".err")).string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const char* kSmallFig1 = R"([model]
kind = free-particle
kappa = 1
[ermakov]
epsilon = -0.25
lambda = 1
a = 1
b = 0
c = 1
[grid]
x_min = -36.841361487904734
x_max = 36.841361487904734
n = 801
)";

}  // namespace

TEST_CASE("fig1 preset: exit 0 and odd imaginary part") {
  REQUIRE(run("preset fig1 --out-dir \"" + (kWork / "fig1").string() + "\"", "fig1") == 0);
  const auto rows = read_csv(kWork / "fig1" / "potential.csv");
  REQUIRE(rows.size() == 2001);
  double odd = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) odd = std::max(odd, std::abs(rows[i][3] + rows[rows.size() - 1 - i][3]));
  CHECK(odd <= 1e-8);
  CHECK(slurp(kWork / "fig1.out").find("zero_area") != std::string::npos);
}

TEST_CASE("fig3 preset: spectrum file lists the three levels") {
  REQUIRE(run("preset fig3 --out-dir \"" + (kWork / "fig3").string() + "\"", "fig3") == 0);
  const auto rows = read_csv(kWork / "fig3" / "spectrum.csv");
  REQUIRE(rows.size() == 3);
  const double ref[] = {1.0, 1.75, 3.75};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(rows[k][1] - ref[k]) <= 2e-3);
    CHECK(std::abs(rows[k][2]) <= 1e-6);
  }
  for (int k = 0; k < 3; ++k) CHECK(fs::exists(kWork / "fig3" / ("state_" + std::to_string(k) + ".csv")));
  CHECK(slurp(kWork / "fig3" / "state_1.csv").rfind("x,re_psi,im_psi,abs_psi\n", 0) == 0);
}

TEST_CASE("emit-config round trip through run") {
  REQUIRE(run("preset fig3-alt --emit-config", "emit") == 0);
  const std::string text = slurp(kWork / "emit.out");
  CHECK(text.find("c = 0.33333333333333331") != std::string::npos);
  CHECK(text.find("b = 0") != std::string::npos);
}

TEST_CASE("infeasible constraint: exit 2") {
  write(kWork / "infeasible.ini", "[model]\nkind = morse\ngamma = 1\ngamma0 = 4\n[ermakov]\nepsilon = 1\nlambda = 2\na = 0.1\nc = 0.1\n");
  CHECK(run("verify \"" + (kWork / "infeasible.ini").string() + "\"", "infeasible") == 2);
  CHECK(slurp(kWork / "infeasible.err").find("infeasible") != std::string::npos);
}

TEST_CASE("violated constraint and bad usage: exit 2") {
  write(kWork / "violated.ini", std::string(kSmallFig1).replace(std::string(kSmallFig1).find("b = 0"), 5, "b = 0.5"));
  CHECK(run("verify \"" + (kWork / "violated.ini").string() + "\"", "violated") == 2);
  CHECK(slurp(kWork / "violated.err").find("b^2 - 4ac") != std::string::npos);
  CHECK(run("verify \"" + (kWork / "nope.ini").string() + "\"", "missing") == 2);
  CHECK(run("preset fig9", "unknown") == 2);
  CHECK(run("frobnicate", "usage") == 2);
}

TEST_CASE("failed check: exit 1 naming the check") {
  write(kWork / "wrong_pt.ini", std::string(kSmallFig1) + "[checks]\nexpect_pt = false\n");
  CHECK(run("verify \"" + (kWork / "wrong_pt.ini").string() + "\"", "wrong_pt") == 1);
  CHECK(slurp(kWork / "wrong_pt.err").find("check failed: pt_expectation") != std::string::npos);
}

TEST_CASE("run output is bitwise deterministic; verify writes nothing") {
  write(kWork / "small.ini", kSmallFig1);
  const std::string cfg = "\"" + (kWork / "small.ini").string() + "\"";
  REQUIRE(run("run " + cfg + " --out-dir \"" + (kWork / "r1").string() + "\"", "r1") == 0);
  REQUIRE(run("run " + cfg + " --out-dir \"" + (kWork / "r2").string() + "\"", "r2") == 0);
  for (const auto& entry : fs::directory_iterator(kWork / "r1")) {
    CAPTURE(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(kWork / "r2" / entry.path().filename()));
  }
  REQUIRE(run("verify " + cfg, "v", kWork / "v") == 0);
  CHECK(fs::is_empty(kWork / "v"));
}

TEST_CASE("shipped example configs pass") {
  for (const char* name : {"fig3.ini", "harmonic.ini"}) {
    CAPTURE(name);
    CHECK(run(std::string("verify \"") + CSUSY_SOURCE_DIR + "/configs/" + name + "\"", name) == 0);
  }
}
