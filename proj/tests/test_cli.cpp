// Drives the installed CLI binary end to end.  The binary path comes from the
// VOLFIELD_CLI compile definition set by the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef VOLFIELD_CLI
#error "VOLFIELD_CLI must point at the CLI binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(VOLFIELD_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> chunk;
  while (std::size_t got = fread(chunk.data(), 1, chunk.size(), pipe))
    output.append(chunk.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("volume subcommand reproduces the two computable values") {
  const RunResult r0 = run_cli("volume --family meridian -k 0");
  REQUIRE(r0.exit_code == 0);
  const json j0 = json::parse(r0.output);
  CHECK(std::fabs(j0.at("value").get<double>() - 2 * kPi * kPi) < 1e-8 * 2 * kPi * kPi);

  const RunResult r1 = run_cli("volume --family meridian -k 1");
  REQUIRE(r1.exit_code == 0);
  const json j1 = json::parse(r1.output);
  CHECK(std::fabs(j1.at("value").get<double>() - 8 * kPi) < 1e-8 * 8 * kPi);
  CHECK(j1.at("bounds").contains("bcj"));
}

TEST_CASE("volume subcommand on k=2 matches the elliptic value") {
  const RunResult r = run_cli("volume --family meridian -k 2");
  REQUIRE(r.exit_code == 0);
  // 12 pi E(8/9), elliptic integral of the second kind
  const double expected = 41.987050357708339;
  CHECK(std::fabs(json::parse(r.output).at("value").get<double>() - expected) < 1e-7);
}

TEST_CASE("residual subcommand separates the families") {
  const RunResult meridian = run_cli("residuals --family meridian -k 3 --grid-n 41");
  REQUIRE(meridian.exit_code == 0);
  const json jm = json::parse(meridian.output);
  CHECK(jm.at("sup").at("el").get<double>() < 1e-6);

  const RunResult latitude = run_cli("residuals --family latitude --grid-n 41");
  REQUIRE(latitude.exit_code == 0);
  const json jl = json::parse(latitude.output);
  CHECK(jl.at("sup").at("el").get<double>() > 1e-3);

  const RunResult colat = run_cli("residuals --family meridian -k 0 --grid-n 41");
  REQUIRE(colat.exit_code == 0);
  CHECK(json::parse(colat.output).at("sup").at("cr").get<double>() > 0.1);
}

TEST_CASE("residual csv mode emits one row per grid point") {
  const RunResult csv = run_cli("residuals --family meridian -k 1 --grid-n 11 --format csv");
  REQUIRE(csv.exit_code == 0);
  std::size_t rows = 0;
  for (char c : csv.output)
    if (c == '\n') ++rows;
  CHECK(rows == 1u + 11u * 11u);
}

TEST_CASE("index subcommand") {
  const RunResult table = run_cli("index --family meridian -k 1 --format table");
  REQUIRE(table.exit_code == 0);
  CHECK(table.output.find("N 0 S 2 sum 2") != std::string::npos);

  const RunResult js = run_cli("index --family meridian -k 4");
  REQUIRE(js.exit_code == 0);
  const json j = json::parse(js.output);
  CHECK(j.at("index_N") == -3);
  CHECK(j.at("index_S") == 5);
  CHECK(j.at("sum") == 2);

  // slit fields cannot wind around the punctures
  CHECK(run_cli("index --family latitude").exit_code == 2);
}

TEST_CASE("compare-region subcommand") {
  const RunResult r = run_cli("compare-region --omega");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("strict") == true);
  CHECK(j.at("margin").get<double>() > 1.0);
  CHECK(j.at("vol_latitude").get<double>() < j.at("euclidean_area").get<double>());
  CHECK(std::fabs(j.at("theta0").get<double>() - 0.393471100105) < 1e-9);
}

TEST_CASE("field-sample emits the full grid of unit pairs") {
  const RunResult r = run_cli("field-sample --family meridian -k 1 --grid 24x48");
  REQUIRE(r.exit_code == 0);
  std::size_t rows = 0;
  std::size_t pos = r.output.find('\n') + 1;  // skip header
  while (pos < r.output.size()) {
    double theta, phi, a, b;
    REQUIRE(std::sscanf(r.output.c_str() + pos, "%lf,%lf,%lf,%lf", &theta, &phi, &a, &b) == 4);
    CHECK(std::fabs(a * a + b * b - 1.0) < 1e-12);
    ++rows;
    pos = r.output.find('\n', pos) + 1;
    if (pos == 0) break;
  }
  CHECK(rows == 24u * 48u);
}

TEST_CASE("sweep emits the bounds table") {
  const RunResult r = run_cli("sweep --kmin 1 --kmax 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("k,volume,lower_bound_thm3,upper_bound_thm3,bcj_bound\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : r.output)
    if (c == '\n') ++rows;
  CHECK(rows == 5u);
}

TEST_CASE("minimize subcommand in family mode") {
  const RunResult r = run_cli("minimize --mode family -k 0 --seed 5 --random-start");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(std::fabs(j.at("volume").get<double>() - 2 * kPi * kPi) < 1e-3);
  CHECK(j.at("converged") == true);
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string cmd = "volume --family meridian -k 2 --region 0.4,2.0,0.0,3.0";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);

  const RunResult s1 = run_cli("field-sample --family latitude --grid 8x16");
  const RunResult s2 = run_cli("field-sample --family latitude --grid 8x16");
  CHECK(s1.output == s2.output);

  const RunResult m1 = run_cli("minimize --mode family -k 1 --seed 11 --random-start");
  const RunResult m2 = run_cli("minimize --mode family -k 1 --seed 11 --random-start");
  CHECK(m1.output == m2.output);
}

TEST_CASE("grid results round-trip through the binary format") {
  const std::string bin = "/tmp/volfield_cli_test_grid.bin";
  const RunResult mini =
      run_cli("minimize --mode grid -k 1 --grid 32x32 --seed 4 --out " + bin);
  REQUIRE((mini.exit_code == 0 || mini.exit_code == 3));  // budget may expire first
  const json mj = json::parse(mini.output);
  CHECK(mj.at("mode") == "grid");
  CHECK(mj.contains("full_estimate"));

  const RunResult vol = run_cli("volume --grid-file " + bin);
  REQUIRE(vol.exit_code == 0);
  const double value = json::parse(vol.output).at("value").get<double>();
  CHECK(value > 15.0);
  CHECK(value < 30.0);

  const RunResult idx = run_cli("index --grid-file " + bin + " --format table");
  REQUIRE(idx.exit_code == 0);
  CHECK(idx.output.find("N 0 S 2 sum 2") != std::string::npos);
  std::remove(bin.c_str());
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli("--definitely-not-a-flag").exit_code == 64);
  CHECK(run_cli("volume --no-such-option 3").exit_code == 64);
  CHECK(run_cli("").exit_code == 64);  // a subcommand is required
}

TEST_CASE("help exits cleanly and lists the surface") {
  const RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  for (const char* sub : {"volume", "residuals", "index", "compare-region", "minimize",
                          "field-sample", "sweep"})
    CHECK(help.output.find(sub) != std::string::npos);

  const RunResult vol_help = run_cli("volume --help");
  CHECK(vol_help.exit_code == 0);
  for (const char* flag : {"--family", "--region", "--radius", "--format", "--out"})
    CHECK(vol_help.output.find(flag) != std::string::npos);
}

TEST_CASE("domain errors exit with 2") {
  CHECK(run_cli("volume --family ttype --T 0.5,0.5").exit_code == 2);
}
