#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "roycrit/cumulants.hpp"
#include "roycrit/roy.hpp"

using nlohmann::json;

namespace {

const std::string kCli = ROYCRIT_CLI_PATH;
const std::string kFixture = std::string(ROYCRIT_FIXTURE_DIR) + "/assets3.csv";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_stdout_" + std::to_string(counter) + ".tmp";
  const std::string err_path = "cli_stderr_" + std::to_string(counter) + ".tmp";
  ++counter;
  const std::string cmd =
      kCli + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("version flag") {
  const RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("roycrit") != std::string::npos);
}

TEST_CASE("rank: table output is sorted by the primary method") {
  const RunResult r =
      run_cli("rank " + kFixture + " --horizon 60 --method cf-quadratic");
  REQUIRE(r.exit_code == 0);
  const auto steady = r.out.find("STEADY");
  const auto momo = r.out.find("MOMO");
  const auto negskew = r.out.find("NEGSKEW");
  REQUIRE(steady != std::string::npos);
  REQUIRE(momo != std::string::npos);
  REQUIRE(negskew != std::string::npos);
  CHECK(steady < momo);
  CHECK(momo < negskew);
}

TEST_CASE("rank: machine output matches a library recomputation") {
  const RunResult r = run_cli("rank " + kFixture +
                              " --horizon 60 --method cf-quadratic,sharpe "
                              "--output machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["tool"] == "roycrit");
  CHECK(doc["command"] == "rank");
  CHECK(doc["horizon"] == 60.0);
  CHECK(doc["methods"].size() == 2);
  REQUIRE(doc["assets"].size() == 3);
  CHECK(doc["seed"].is_null());

  // recompute NEGSKEW's score straight from the file
  std::ifstream in(kFixture);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> negskew;
  while (std::getline(in, line)) {
    negskew.push_back(std::strtod(line.c_str(), nullptr));
  }
  const roycrit::Cumulants est = roycrit::estimate_cumulants(negskew, 4);
  const double expected =
      roycrit::roy_cf_quadratic(est, roycrit::Horizon(60.0, 0.0)).value;

  bool found = false;
  for (const auto& asset : doc["assets"]) {
    if (asset["name"] != "NEGSKEW") continue;
    found = true;
    const double got = asset["scores"][0]["value"].get<double>();
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    // the worked example the fixture was built around
    CHECK(std::abs(got - 0.0719) < 1e-3);
    CHECK(asset["scores"][0]["method"] == "cf-quadratic");
    CHECK(asset["cumulants"]["zeta3"].get<double>() < -0.5);
    CHECK(asset["crossover_horizon"].get<double>() ==
          doctest::Approx(204.0816).epsilon(1e-3));
  }
  CHECK(found);

  // the near-normal column scores almost identically under both methods
  for (const auto& asset : doc["assets"]) {
    if (asset["name"] != "STEADY") continue;
    const double quad = asset["scores"][0]["value"].get<double>();
    const double sr = asset["scores"][1]["value"].get<double>();
    CHECK(std::abs(quad - sr) < 5e-3);
  }
}

TEST_CASE("rank: byte-identical machine reruns") {
  const std::string args = "rank " + kFixture +
                           " --horizon 60 --seed 7 --output machine";
  const RunResult a = run_cli(args + " --out run_a.json");
  const RunResult b = run_cli(args + " --out run_b.json");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  const std::string file_a = slurp("run_a.json");
  const std::string file_b = slurp("run_b.json");
  CHECK(!file_a.empty());
  CHECK(file_a == file_b);
  const json doc = json::parse(file_a);
  CHECK(doc["seed"] == 7);
  std::remove("run_a.json");
  std::remove("run_b.json");
}

TEST_CASE("rank: identical columns tie-break by name") {
  std::ostringstream csv;
  csv << "ZULU,ALPHA\n";
  for (int i = 0; i < 32; ++i) {
    const double v = 0.001 * ((i * 37) % 11 - 5) + 1e-4 * i;
    csv << v << "," << v << "\n";
  }
  write_file("tie.csv", csv.str());
  const RunResult r = run_cli("rank tie.csv --output machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["assets"][0]["name"] == "ALPHA");
  CHECK(doc["assets"][1]["name"] == "ZULU");
  CHECK(doc["assets"][0]["scores"][0]["value"] ==
        doc["assets"][1]["scores"][0]["value"]);
  std::remove("tie.csv");
}

TEST_CASE("rank: tab delimiter autodetected and table/machine agree") {
  std::ostringstream tsv;
  tsv << "ONE\tTWO\n";
  for (int i = 0; i < 24; ++i) {
    tsv << 0.001 * ((i * 29) % 13 - 6) << '\t' << 0.002 * ((i * 31) % 7 - 3)
        << '\n';
  }
  write_file("pair.tsv", tsv.str());
  const RunResult table = run_cli("rank pair.tsv --method sharpe");
  const RunResult machine =
      run_cli("rank pair.tsv --method sharpe --output machine");
  REQUIRE(table.exit_code == 0);
  REQUIRE(machine.exit_code == 0);
  const json doc = json::parse(machine.out);
  // the 4-significant-digit table rendering of the full-precision value
  const double v = doc["assets"][0]["scores"][0]["value"].get<double>();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  CHECK(table.out.find(buf) != std::string::npos);
  std::remove("pair.tsv");
}

TEST_CASE("rank: input error paths exit 2 with diagnostics") {
  SUBCASE("missing file") {
    const RunResult r = run_cli("rank does_not_exist.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("cannot read") != std::string::npos);
  }
  SUBCASE("non-numeric cell names the row and column") {
    write_file("bad.csv", "A,B\n0.1,0.2\n0.3,oops\n0.5,0.6\n");
    const RunResult r = run_cli("rank bad.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("column 2") != std::string::npos);
    CHECK(r.err.find("B") != std::string::npos);
    std::remove("bad.csv");
  }
  SUBCASE("too few rows") {
    write_file("short.csv", "A\n0.1\n0.2\n0.3\n");
    const RunResult r = run_cli("rank short.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("at least") != std::string::npos);
    std::remove("short.csv");
  }
  SUBCASE("ragged row") {
    write_file("ragged.csv",
               "A,B\n0.1,0.2\n0.3\n0.1,0.2\n0.1,0.2\n0.1,0.2\n0.1,0.2\n0.1,"
               "0.2\n0.1,0.2\n");
    const RunResult r = run_cli("rank ragged.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    std::remove("ragged.csv");
  }
  SUBCASE("constant column") {
    std::ostringstream csv;
    csv << "A,B\n";
    for (int i = 0; i < 16; ++i) csv << 0.001 * (i % 5) << ",0.25\n";
    write_file("flat.csv", csv.str());
    const RunResult r = run_cli("rank flat.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("zero variance") != std::string::npos);
    std::remove("flat.csv");
  }
  SUBCASE("exact-empirical refuses multi-period horizons") {
    const RunResult r = run_cli("rank " + kFixture +
                                " --horizon 60 --method exact-empirical");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("horizon 1") != std::string::npos);
  }
  SUBCASE("unknown method") {
    const RunResult r = run_cli("rank " + kFixture + " --method nope");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("bad flag") {
    const RunResult r = run_cli("rank " + kFixture + " --horizon -3");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("rank: exact-empirical at horizon 1") {
  const RunResult r = run_cli("rank " + kFixture +
                              " --method exact-empirical,sharpe --output "
                              "machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  for (const auto& asset : doc["assets"]) {
    CHECK(asset["scores"][0]["value"].is_number());
    CHECK(!asset["scores"][0]["saturated"].get<bool>());
  }
}

TEST_CASE("counterexample: defaults reproduce the worked example") {
  const RunResult r =
      run_cli("counterexample --paths 200000 --output machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["base_sharpe"].get<double>() == doctest::Approx(0.1));
  CHECK(doc["bonus_sharpe"].get<double>() ==
        doctest::Approx(0.0995).epsilon(5e-4));
  CHECK(doc["min_reversal_bonus"].get<double>() ==
        doctest::Approx(0.202).epsilon(1e-12));
  CHECK(doc["reversal_p_bound"].get<double>() ==
        doctest::Approx(0.0019).epsilon(1e-2));
  CHECK(doc["sharpe_reversed"] == true);
  CHECK(doc["analytic"]["fosd_holds"] == true);
  CHECK(doc["analytic"]["roy_consistent"] == true);
  CHECK(doc["analytic"]["probe_r0"].size() == 11);
  CHECK(doc["simulation"]["fosd_verdict"] == "a_dominates");
}

TEST_CASE("counterexample: degenerate and infeasible parameter handling") {
  SUBCASE("p = 0 is a tie, not an error") {
    const RunResult r = run_cli("counterexample --p 0 --paths 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("degenerate") != std::string::npos);
  }
  SUBCASE("bonus below the minimum reports no reversing p") {
    const RunResult r = run_cli("counterexample --bonus 0.1 --paths 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("no reversing p") != std::string::npos);
  }
  SUBCASE("invalid sigma exits 4") {
    const RunResult r = run_cli("counterexample --sigma 0 --paths 0");
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("sigma") != std::string::npos);
  }
  SUBCASE("non-positive mixture variance exits 4") {
    const RunResult r =
        run_cli("counterexample --mu 0.5 --sigma 0.01 --p 0.5 --bonus 1 "
                "--paths 0");
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("variance") != std::string::npos);
  }
}

TEST_CASE("term: worked values and the crossover row") {
  const RunResult r = run_cli(
      "term --snr 0.07 --zeta3 -1 --n-grid 60,252 --output machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["crossover_horizon"].get<double>() ==
        doctest::Approx(204.08163265306123).epsilon(1e-10));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["psi_cf_quadratic"].get<double>() ==
        doctest::Approx(0.0719).epsilon(5e-3));
  CHECK(std::abs(doc["rows"][0]["psi_cf_quadratic"].get<double>() - 0.0719) <
        5e-4);
  CHECK(std::abs(doc["rows"][1]["psi_cf_quadratic"].get<double>() - 0.0698) <
        5e-4);
  CHECK(doc["rows"][0]["skew_preference"] == -1);
  CHECK(doc["rows"][1]["skew_preference"] == 1);
}

TEST_CASE("term: zero skew is horizon-invariant") {
  const RunResult r = run_cli(
      "term --snr 0.07 --zeta3 0 --n-grid 10,60,252,1000 --output machine");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  for (const auto& row : doc["rows"]) {
    CHECK(row["psi_cf_quadratic"].get<double>() == 0.07);
  }
}

TEST_CASE("term: error paths") {
  SUBCASE("needs snr or mu/sigma") {
    const RunResult r = run_cli("term --zeta3 -1 --n-grid 60");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("both snr and mu/sigma rejected") {
    const RunResult r =
        run_cli("term --snr 0.07 --mu 0.001 --sigma 0.01 --n-grid 60");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("bad grid") {
    const RunResult r = run_cli("term --snr 0.07 --n-grid 60,-5");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("no real root exits 3") {
    const RunResult r = run_cli("term --snr 0.8 --zeta3 2 --n-grid 100");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("no real root") != std::string::npos);
  }
  SUBCASE("mu/sigma path works") {
    const RunResult r = run_cli(
        "term --mu 0.0007 --sigma 0.01 --zeta3 -1 --n-grid 60 "
        "--output machine");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(std::abs(doc["rows"][0]["psi_cf_quadratic"].get<double>() -
                   0.0719) < 5e-4);
  }
}

TEST_SUITE_END();
