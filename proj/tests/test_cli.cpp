#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "shapestat/cli.hpp"
#include "shapestat/errors.hpp"
#include "shapestat/rng.hpp"

using namespace shapestat;
using nlohmann::json;

namespace {

const std::string kCli = SHAPESTAT_CLI_PATH;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + kCli + " " + args + " > /dev/null 2> cli_err.txt";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

void make_samples() {
  RngStream sx(derive_seed(818, 0, 0)), sy(derive_seed(818, 0, 1));
  std::string x = "value\n", y;
  for (int i = 0; i < 60; ++i) x += std::to_string(0.8 + sx.normal()) + "\n";
  for (int i = 0; i < 80; ++i) y += std::to_string(sy.normal()) + "\n";
  write_file("cli_x.csv", x);
  write_file("cli_y.csv", y);
}

}  // namespace

TEST_CASE("read_samples parses and reports line numbers") {
  write_file("cli_in1.csv", "1\n2\n3\n");
  Sample a = read_samples("cli_in1.csv");
  CHECK(a.size() == 3);
  CHECK(a[0] == 1.0);

  write_file("cli_in2.csv", "value\r\n0.5\r\n");
  Sample b = read_samples("cli_in2.csv");
  CHECK(b.size() == 1);
  CHECK(b[0] == 0.5);

  write_file("cli_in3.csv", "1\nabc\n");
  try {
    read_samples("cli_in3.csv");
    CHECK(false);
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }

  write_file("cli_in4.csv", "\n\n");
  CHECK_THROWS_AS(read_samples("cli_in4.csv"), input_error);
  CHECK_THROWS_AS(read_samples("does_not_exist.csv"), input_error);

  write_file("cli_in5.csv", "1\ninf\n");
  CHECK_THROWS_AS(read_samples("cli_in5.csv"), input_error);
}

TEST_CASE("dominance and hellinger emit the documented schema") {
  make_samples();
  REQUIRE(run("dominance --x cli_x.csv --y cli_y.csv --stat min-t --family logconcave"
              " --p 0.075 --alpha 0.05 --out cli_dom.json") == 0);
  json dom = json::parse(slurp("cli_dom.json"));
  CHECK(dom["schema_version"] == 1);
  CHECK(dom["statistic"] == "min-t");
  CHECK(dom["family"] == "logconcave");
  CHECK(dom.contains("value"));
  CHECK(dom.contains("critical_value"));
  CHECK(dom.contains("p_value"));
  CHECK(dom.contains("reject"));
  CHECK(dom["interval"].size() == 2);
  CHECK(dom.contains("c_mn"));

  REQUIRE(run("hellinger --x cli_x.csv --y cli_y.csv --family logconcave-smoothed"
              " --ci-level 0.95 --out cli_hell.json") == 0);
  json hell = json::parse(slurp("cli_hell.json"));
  CHECK(hell["schema_version"] == 1);
  CHECK(hell["h2"].is_number());
  CHECK(hell["ci_h2"].size() == 2);
  CHECK(hell["ci_h"].size() == 2);
  CHECK(hell["n_x"] == 60);
  CHECK(hell["n_y"] == 80);

  REQUIRE(run("hellinger --x cli_x.csv --y cli_y.csv --family kde-naive --out cli_naive.json") ==
          0);
  json naive = json::parse(slurp("cli_naive.json"));
  CHECK(naive["ci_h2"].is_null());
}

TEST_CASE("density grids integrate to one for every family") {
  make_samples();
  for (const std::string fam : {"unimodal", "logconcave", "logconcave-smoothed", "kde"}) {
    REQUIRE(run("density --input cli_x.csv --family " + fam +
                " --grid 8192 --format csv --out cli_den.csv") == 0);
    std::ifstream in("cli_den.csv");
    std::string line;
    std::getline(in, line);  // header
    double prev_x = 0.0, prev_pdf = 0.0, mass = 0.0, prev_cdf = -1.0;
    bool first = true;
    while (std::getline(in, line)) {
      double x, pdf, cdf;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &pdf, &cdf) == 3);
      if (!first) mass += 0.5 * (pdf + prev_pdf) * (x - prev_x);
      CHECK(cdf >= prev_cdf - 1e-12);
      prev_x = x;
      prev_pdf = pdf;
      prev_cdf = cdf;
      first = false;
    }
    CHECK(std::fabs(mass - 1.0) <= 1e-4);
    CHECK(std::fabs(prev_cdf - 1.0) <= 1e-6);
  }
}

TEST_CASE("randomized commands are deterministic and thread-independent") {
  make_samples();
  const std::string cmd =
      "simulate power --case a --stat min-t --family empirical --m 40 --n 40"
      " --reps 60 --seed 7 --gammas 0,1 --out ";
  REQUIRE(run(cmd + "cli_p1.json", "SHAPESTAT_THREADS=1") == 0);
  REQUIRE(run(cmd + "cli_p2.json", "SHAPESTAT_THREADS=4") == 0);
  CHECK(slurp("cli_p1.json") == slurp("cli_p2.json"));

  const std::string cv = "crossval --input cli_x.csv --methods logconcave,kde-lscv --folds 5"
                         " --seed 9 --out ";
  REQUIRE(run(cv + "cli_c1.json") == 0);
  REQUIRE(run(cv + "cli_c2.json", "SHAPESTAT_THREADS=2") == 0);
  CHECK(slurp("cli_c1.json") == slurp("cli_c2.json"));

  json p = json::parse(slurp("cli_p1.json"));
  CHECK(p["points"].size() == 2);
  CHECK(p["points"][0].contains("gamma"));
  CHECK(p["points"][0].contains("estimate"));
  CHECK(p["points"][0].contains("se"));
}

TEST_CASE("simulate hellinger and power-near-data wiring") {
  make_samples();
  REQUIRE(run("simulate hellinger --case b --estimators logconcave --n-grid 30 --reps 8"
              " --seed 3 --out cli_sh.json") == 0);
  json sh = json::parse(slurp("cli_sh.json"));
  CHECK(sh["points"].size() == 1);
  CHECK(sh["points"][0]["estimator"] == "logconcave");
  CHECK(sh["points"][0]["reps"] == 8);

  // case c requires the fitted pair
  CHECK(run("simulate hellinger --case c --estimators logconcave --n-grid 30 --reps 4"
            " --seed 3") == 2);
  REQUIRE(run("simulate hellinger --case c --x cli_x.csv --y cli_y.csv --estimators logconcave"
              " --n-grid 30 --reps 4 --seed 3 --out cli_shc.json") == 0);
  json shc = json::parse(slurp("cli_shc.json"));
  CHECK(shc["points"][0]["truth"].is_number());

  REQUIRE(run("power-near-data --x cli_x.csv --y cli_y.csv --stat min-t --family empirical"
              " --reps 10 --gammas 0,1 --projection-draws 150 --seed 2 --out cli_pnd.json") ==
          0);
  json pnd = json::parse(slurp("cli_pnd.json"));
  CHECK(pnd["points"].size() == 2);
  CHECK(pnd["p"] == 0.075);  // the paper-facing default for this command
}

TEST_CASE("error paths use the documented exit codes") {
  CHECK(run("dominance --x missing.csv --y also_missing.csv") == 2);
  CHECK(run("density --input cli_x.csv --family nonsense") == 2);
  write_file("cli_const.csv", "2\n2\n2\n2\n");
  CHECK(run("density --input cli_const.csv --family logconcave") == 3);
  CHECK(run("nonsense-subcommand") == 2);

  // stderr carries machine-readable JSON
  run("dominance --x missing.csv --y also_missing.csv");
  json err = json::parse(slurp("cli_err.txt"));
  CHECK(err["code"] == 2);
  CHECK(err.contains("error"));
}
