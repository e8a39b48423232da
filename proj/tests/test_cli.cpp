#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "virial/virial.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(VIRIAL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TableHandle {
  virial_table* t = nullptr;
  ~TableHandle() { virial_table_free(t); }
  double at(std::size_t row, std::size_t col) const {
    double v = NAN;
    REQUIRE(virial_table_value(t, row, col, &v) == VIRIAL_OK);
    return v;
  }
};

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / ("virial_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("spectrum reproduces the quartic table") {
  const auto r = run("spectrum --kappa 2 --lambda 1.0 --nmax 5");
  REQUIRE(r.code == 0);
  TableHandle t;
  REQUIRE(virial_table_parse(r.out.c_str(), VIRIAL_FORMAT_CSV, &t.t) == VIRIAL_OK);
  REQUIRE(virial_table_rows(t.t) == 6);
  const double ref[] = {0.66798626, 2.39364401, 4.69679538, 7.33572999, 10.24430846, 13.37933656};
  const double ans[] = {0.68887235, 2.43397719, 4.77567638, 7.46297170, 10.41673681, 13.60747014};
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(std::abs(t.at(n, 1) - ref[n]) <= 2e-8);
    CHECK(std::abs(t.at(n, 2) - ans[n]) <= 6e-8);
  }
  CHECK(r.out.rfind("n,E_ref,E_virial,E_rayleigh,eps_percent,gamma\n0,0.66798626,0.68887235,", 0) == 0);
}

TEST_CASE("harmonic spectrum has zero error") {
  const auto r = run("spectrum --quartic-anharmonic --omega 1 --lambda 0 --format json");
  REQUIRE(r.code == 0);
  TableHandle t;
  REQUIRE(virial_table_parse(r.out.c_str(), VIRIAL_FORMAT_JSON, &t.t) == VIRIAL_OK);
  for (std::size_t n = 0; n < virial_table_rows(t.t); ++n) CHECK(std::abs(t.at(n, 4)) <= 1e-7);
}

TEST_CASE("exit codes") {
  CHECK(run("spectrum --kappa 2 --lambda -1").code == 2);
  CHECK(run("spectrum --kappa 2 --lambda abc").code == 2);
  CHECK(run("spectrum --kappa 2 --format xml").code == 2);
  CHECK(run("spectrum --coeffs 0.1,1 --polynomial").code == 2);  // 0.1 x breaks the symmetry
  CHECK(run("spectrum --coeffs 0,0.5,0,1 --polynomial --nmax 1").code == 0);
  CHECK(run("scaling-check --lambdas 0.1,0,1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("spectrum --kappa 2 --lambda 1 --max-refinements 1").code == 3);
  CHECK(run("scaling-check --amplitude-threshold 0 --energy-threshold 0").code == 4);
  CHECK(run("scaling-check --kappa 1 --nmax 3").code == 0);
  CHECK(run("spectrum --config /nonexistent/file.ini").code == 2);
}

TEST_CASE("identical configurations give identical bytes") {
  const auto a = run("export-wavefunctions --kappa 3 --lambda 0.7 --nmax 3 --points 41 --format json");
  const auto b = run("export-wavefunctions --kappa 3 --lambda 0.7 --nmax 3 --points 41 --format json --workers 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run("spectrum --quartic-anharmonic --omega 1 --lambda 0.5 --nmax 6 --workers 4 --seedless");
  const auto d = run("spectrum --quartic-anharmonic --omega 1 --lambda 0.5 --nmax 6");
  CHECK(c.out == d.out);
}

TEST_CASE("config file overrides flags") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "run.ini";
  std::ofstream(cfg) << "# quartic column\nkind = monomial\nkappa = 3\nlambda = 1\nnmax = 0\n";
  const auto r = run("spectrum --kappa 2 --nmax 4 --config " + cfg.string());
  REQUIRE(r.code == 0);
  TableHandle t;
  REQUIRE(virial_table_parse(r.out.c_str(), VIRIAL_FORMAT_CSV, &t.t) == VIRIAL_OK);
  CHECK(virial_table_rows(t.t) == 1);
  CHECK(t.at(0, 4) == doctest::Approx(9.8999).epsilon(1e-4));
  fs::remove_all(dir);
}

TEST_CASE("error table and derived series file round trip") {
  const auto dir = scratch_dir();
  const auto out = dir / "errors.csv";
  REQUIRE(run("error-table --kappas 1,2 --nmax 3 --quiet --out " + out.string()).code == 0);
  const auto series = dir / "errors_series.csv";
  REQUIRE(fs::exists(series));
  TableHandle m, s;
  REQUIRE(virial_table_parse(slurp(out).c_str(), VIRIAL_FORMAT_CSV, &m.t) == VIRIAL_OK);
  REQUIRE(virial_table_parse(slurp(series).c_str(), VIRIAL_FORMAT_CSV, &s.t) == VIRIAL_OK);
  CHECK(std::string(virial_table_column_name(m.t, 2)) == "eps_2");
  for (std::size_t n = 0; n < 4; ++n) CHECK(std::abs(m.at(n, 1)) <= 1e-7);
  CHECK(m.at(0, 2) == 3.1267);
  CHECK(virial_table_rows(s.t) == 8);
  // parsed -> serialised -> parsed keeps every value
  char* text = nullptr;
  REQUIRE(virial_table_serialize(m.t, VIRIAL_FORMAT_JSON, &text) == VIRIAL_OK);
  TableHandle again;
  REQUIRE(virial_table_parse(text, VIRIAL_FORMAT_JSON, &again.t) == VIRIAL_OK);
  virial_string_free(text);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t c = 0; c < 3; ++c) CHECK(again.at(n, c) == m.at(n, c));
  fs::remove_all(dir);
}

TEST_CASE("wavefunction export and sweep") {
  const auto dir = scratch_dir();
  const auto out = dir / "waves.json";
  REQUIRE(run("export-wavefunctions --kappa 2 --lambda 1 --nmax 4 --format json --sweep "
              "--sweep-points 5 --quiet --out " + out.string()).code == 0);
  TableHandle w, sw;
  REQUIRE(virial_table_parse(slurp(out).c_str(), VIRIAL_FORMAT_JSON, &w.t) == VIRIAL_OK);
  CHECK(virial_table_columns(w.t) == 11);
  double max_psi = 0, max_chi = 0;
  for (std::size_t i = 0; i < virial_table_rows(w.t); ++i) {
    max_psi = std::max(max_psi, std::abs(w.at(i, 1)));
    max_chi = std::max(max_chi, std::abs(w.at(i, 6)));
  }
  CHECK(max_chi < max_psi);
  const auto sweep = dir / "waves_sweep.json";
  REQUIRE(fs::exists(sweep));
  REQUIRE(virial_table_parse(slurp(sweep).c_str(), VIRIAL_FORMAT_JSON, &sw.t) == VIRIAL_OK);
  CHECK(virial_table_rows(sw.t) == 25);
  CHECK(w.at(0, 0) < 0.0);
  fs::remove_all(dir);
}
