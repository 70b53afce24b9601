#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qtm/closed_form.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
  std::string diagnostics;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = temp_path("stdout.txt");
  const std::string err_path = temp_path("stderr.txt");
  const std::string command =
      std::string(QTM1D_BINARY) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.output = slurp(out_path);
  r.diagnostics = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep output is deterministic and flux-consistent") {
  const std::string cfg = temp_path("sweep.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = 2.0\n"
             "width = 2.42\n"
             "junctions = 4\n"
             "delta_x = 0.02\n"
             "e_min = 0.1\n"
             "e_max = 10\n"
             "e_points = 50\n");
  const auto first = run_cli("sweep --config " + cfg);
  const auto second = run_cli("sweep --config " + cfg);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);  // byte-identical reruns
  const auto rows = parse_csv(first.output);
  REQUIRE(rows.size() == 51);  // header + 50 points
  CHECK(rows[0][0] == "E");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][1]);
    const double r = std::stod(rows[i][2]);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(t + r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rows[i][3] == "0");
  }
  std::remove(cfg.c_str());
}

TEST_CASE("sweep rows below the asymptote are flagged, not fatal") {
  const std::string cfg = temp_path("flagged.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = 2.0\n"
             "width = 1.0\n"
             "junctions = 2\n"
             "e_min = -1.0\n"
             "e_max = -0.1\n"
             "e_points = 5\n");
  const auto result = run_cli("sweep --config " + cfg);
  CHECK(result.exit_code == 0);
  for (const auto& row : parse_csv(result.output)) {
    if (row[0] == "E") continue;
    CHECK(row[3] == "1");
    CHECK(row[1] == "nan");
  }
  std::remove(cfg.c_str());
}

TEST_CASE("config errors name the offending key and exit 2") {
  const std::string cfg = temp_path("bad.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = 2.0\n"
             "width = oops\n"
             "junctions = 2\n"
             "e_min = 0.1\ne_max = 1\n");
  const auto result = run_cli("sweep --config " + cfg);
  CHECK(result.exit_code == 2);
  CHECK(result.diagnostics.find("'width'") != std::string::npos);
  std::remove(cfg.c_str());

  const std::string cfg2 = temp_path("unknown.cfg");
  write_file(cfg2,
             "potential = rectangular\nv0 = 2.0\nwidth = 1.0\njunctions = 2\n"
             "e_min = 0.1\ne_max = 1\ntypo_key = 3\n");
  const auto result2 = run_cli("sweep --config " + cfg2);
  CHECK(result2.exit_code == 2);
  CHECK(result2.diagnostics.find("'typo_key'") != std::string::npos);
  std::remove(cfg2.c_str());
}

TEST_CASE("bound report on a barrier is empty with a warning, exit 0") {
  const std::string cfg = temp_path("barrier.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = 3.0\n"
             "width = 2.0\n"
             "junctions = 3\n");
  const auto result = run_cli("bound --config " + cfg);
  CHECK(result.exit_code == 0);
  CHECK(parse_csv(result.output).size() == 1);  // header only
  CHECK(result.diagnostics.find("no well") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("bound report lists both conventions and the analytic column") {
  const std::string cfg = temp_path("well.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = -20\n"
             "width = 1.05\n"
             "junctions = 2\n"
             "delta_x = 0.025\n");
  const auto result = run_cli("bound --config " + cfg);
  REQUIRE(result.exit_code == 0);
  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 4);  // header + 3 levels
  CHECK(rows[0][4] == "E_rect_analytic");
  const double expected[] = {2.96496, 10.6123, 19.5963};
  const double analytic[] = {2.61562, 10.0498, 19.5865};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::stoi(rows[i + 1][1]) == i);  // node counts
    const double above_bottom = std::stod(rows[i + 1][3]);
    CHECK(std::abs(above_bottom - expected[i]) < 5e-2);
    CHECK(std::stod(rows[i + 1][4]) == doctest::Approx(analytic[i]).epsilon(1e-4));
    CHECK(std::stod(rows[i + 1][2]) == doctest::Approx(above_bottom - 20.0).epsilon(1e-9));
  }
  std::remove(cfg.c_str());
}

TEST_CASE("eigenfunction command rejects out-of-range levels with the available range") {
  const std::string cfg = temp_path("eig.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = -20\n"
             "width = 1.05\n"
             "junctions = 2\n"
             "delta_x = 0.025\n"
             "level = 17\n");
  const auto result = run_cli("eigenfunction --config " + cfg);
  CHECK(result.exit_code == 2);
  CHECK(result.diagnostics.find("0..2") != std::string::npos);
  std::remove(cfg.c_str());
}

TEST_CASE("eigenfunction emits a normalized level with the rectangle overlay") {
  const std::string cfg = temp_path("eigok.cfg");
  write_file(cfg,
             "potential = rectangular\n"
             "v0 = -20\n"
             "width = 2.05\n"
             "junctions = 3\n"
             "delta_x = 0.025\n"
             "level = 0\n"
             "x_points = 501\n");
  const auto result = run_cli("eigenfunction --config " + cfg);
  REQUIRE(result.exit_code == 0);
  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 502);
  CHECK(rows[0][2] == "psi_rect");
  double norm = 0.0;
  double overlap = 0.0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double x1 = std::stod(rows[i - 1][0]);
    const double x2 = std::stod(rows[i][0]);
    const double p1 = std::stod(rows[i - 1][1]);
    const double p2 = std::stod(rows[i][1]);
    norm += 0.5 * (x2 - x1) * (p1 * p1 + p2 * p2);
    const double r1 = std::stod(rows[i - 1][2]);
    const double r2 = std::stod(rows[i][2]);
    overlap += 0.5 * (x2 - x1) * (p1 * r1 + p2 * r2);
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(overlap > 0.99);  // ground state closely tracks the analytic well
  std::remove(cfg.c_str());
}

TEST_CASE("closed-form command reports the resonance and Ramsauer peak") {
  const std::string cfg = temp_path("closed.cfg");
  write_file(cfg,
             "mass = 1\nhbar = 1\nv0 = 1.0\ndelta_x = 0.7\n"
             "e_min = 0.25\ne_max = 2.0\ne_points = 8\n");
  const auto result = run_cli("closed-form --config " + cfg);
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("barrier_resonance_T=1 ") != std::string::npos);
  CHECK(result.output.find("ramsauer_peak_T=0.20325203252032520") != std::string::npos);
  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 9);
  // E = 2 row: T_barrier = 1/1.49
  const auto& last = rows.back();
  CHECK(std::stod(last[1]) == doctest::Approx(1.0 / 1.49).epsilon(1e-12));
  std::remove(cfg.c_str());
}

TEST_CASE("laplace command emits the wavefunction grid and IVT diagnostics") {
  const std::string cfg = temp_path("laplace.cfg");
  write_file(cfg,
             "mass = 1\nhbar = 1\nv0 = 1.0\ndelta_x = 0.07\n"
             "s_re = 2.0\ns_im = 0.0\n"
             "packet_center = -1.0\npacket_sigma = 0.5\n"
             "x_min = -3\nx_max = 3\nx_points = 31\n");
  const auto result = run_cli("laplace --config " + cfg);
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.find("ivt_error_s1e2=") != std::string::npos);
  const auto rows = parse_csv(result.output);
  REQUIRE(rows.size() == 32);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::isfinite(std::stod(rows[i][1])));
    CHECK(std::isfinite(std::stod(rows[i][2])));
  }
  std::remove(cfg.c_str());
}

TEST_CASE("json format emits parseable documents") {
  const std::string cfg = temp_path("json.cfg");
  write_file(cfg,
             "potential = rectangular\nv0 = 2.0\nwidth = 2.42\njunctions = 3\n"
             "e_min = 2.2\ne_max = 4.0\ne_points = 5\n");
  const auto result = run_cli("sweep --format json --config " + cfg);
  REQUIRE(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["command"] == "sweep");
  REQUIRE(doc["rows"].size() == 5);
  CHECK(doc["rows"][0]["E"].get<double>() == doctest::Approx(2.2));
  std::remove(cfg.c_str());
}

TEST_CASE("missing config file is a config error") {
  const auto result = run_cli("sweep --config does_not_exist.cfg");
  CHECK(result.exit_code == 2);
  CHECK(result.diagnostics.find("does_not_exist.cfg") != std::string::npos);
}
