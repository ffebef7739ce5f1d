#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dpcc/rational.hpp"

using namespace dpcc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "dpcc_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("params") {
  auto r = run_cli({"params", "--n", "2", "--k", "3", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "M=2/3"));
  CHECK(contains(r.out, "R=1 "));
  r = run_cli({"params", "--n", "3", "--k", "2", "--r", "0"});
  CHECK(contains(r.out, "M=3 "));
  CHECK(contains(r.out, "R=0 "));
  r = run_cli({"params", "--n", "2", "--k", "3", "--r", "3", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["M"] == "1/4");
  CHECK(j["R"] == "3/2");
  CHECK(j["delivery_segments"] == "6");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"params", "--n", "2", "--k", "3"}).code == 2);
  CHECK(run_cli({"params", "--n", "2", "--k", "3", "--r", "9"}).code == 2);
  CHECK(run_cli({"params", "--n", "1", "--k", "3", "--r", "1"}).code == 2);
  CHECK(run_cli({"params", "--n", "2", "--k", "3", "--r", "2", "--f", "7"}).code == 2);
  CHECK(run_cli({"params", "--n", "2", "--k", "3", "--r", "2", "--format", "xml"}).code == 2);
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--demands", "0,1"}).code == 2);
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--demands", "0,1,2"}).code == 2);
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--demands", "0,x,1"}).code == 2);
  CHECK(run_cli({"verify", "nonsense", "--n", "2", "--k", "2", "--r", "1"}).code == 2);
  CHECK(run_cli({"verify", "privacy", "--mode", "full-marginal", "--n", "2", "--k", "2", "--r", "1", "--f", "6"}).code == 2);
  CHECK(run_cli({"tradeoff", "--k", "3", "--n", "3"}).code == 2);
  CHECK(run_cli({"tradeoff", "--k", "1"}).code == 2);
  CHECK(run_cli({"tradeoff", "--k", "3", "--grid", "0"}).code == 2);
  CHECK(run_cli({"tradeoff", "--k", "3", "--grid", "abc"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("simulate: decodes every user and accounts for R F bits") {
  const auto r = run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--seed", "7", "--demands", "0,1,1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "demands D=(0,1,1)"));
  CHECK(contains(r.out, "decoded 3/3 users"));
  CHECK(contains(r.out, "delivery: 48 bits (R*F=48)"));
  CHECK(contains(r.out, "cache 32 bits"));

  const auto j = nlohmann::json::parse(
      run_cli({"simulate", "--n", "3", "--k", "2", "--r", "2", "--seed", "3", "--format", "json"}).out);
  CHECK(j["decoded"] == 2);
  CHECK(j["delivery_bits"] == 3 * 2 * 10 * 8 / 5);
}

TEST_CASE("simulate: same seed gives identical transcripts, other seeds differ") {
  const std::vector<std::string> args{"simulate", "--n", "3", "--k", "3", "--r", "2", "--seed", "11"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "12";
  CHECK(run_cli(other).out != a.out);
}

TEST_CASE("simulate: library file with sidecar") {
  const auto lib = scratch("lib.bin");
  {
    std::ofstream f(lib, std::ios::binary);
    for (int i = 0; i < 12; ++i) f.put(static_cast<char>(0x5A + 17 * i));  // 2 files x 48 bits
  }
  {
    std::ofstream meta(lib.string() + ".json");
    meta << R"({"N": 2, "F": 48})";
  }
  auto r = run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--library", lib.string(), "--demands", "1,0,1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "F=48"));
  CHECK(contains(r.out, "decoded 3/3 users"));

  CHECK(run_cli({"simulate", "--n", "3", "--k", "3", "--r", "2", "--library", lib.string()}).code == 2);
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--f", "24", "--library", lib.string()}).code == 2);
  {
    std::ofstream meta(lib.string() + ".json");
    meta << R"({"N": 2, "F": 40})";
  }
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--library", lib.string()}).code == 2);
  {
    std::ofstream meta(lib.string() + ".json");
    meta << R"({"N": 2, "F": 42})";
  }
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--library", lib.string()}).code == 2);
  CHECK(run_cli({"simulate", "--n", "2", "--k", "3", "--r", "2", "--library", "/nonexistent/lib"}).code == 2);
}

TEST_CASE("verify suites") {
  auto r = run_cli({"verify", "all", "--n", "2", "--k", "3", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "verdict: PASS"));
  r = run_cli({"verify", "--suite", "privacy", "--mode", "full-marginal", "--n", "2", "--k", "3", "--r", "2"});
  CHECK(r.code == 0);
  r = run_cli({"verify", "reconstruction", "--n", "2", "--k", "4", "--r", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "pass");
  CHECK(j["reports"][0]["cases_run"] == 8);
}

TEST_CASE("tradeoff: three users tight everywhere") {
  const auto r = run_cli({"tradeoff", "--k", "3", "--grid", "1/100"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "M,R_ach,R_conv,tight");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows == 201);
}

TEST_CASE("tradeoff: four users tight exactly outside (1/2, 6/5); JSON round trip") {
  const auto r = run_cli({"tradeoff", "--k", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.size() == 201);
  for (const auto& row : rows) {
    const Rational M = parse_rational(row["M"].get<std::string>());
    const bool inside = M > Rational(1, 2) && M < Rational(6, 5);
    CHECK(row["tight"].get<bool>() == !inside);
    for (const char* key : {"M", "R_ach", "R_conv"}) {
      const Rational exact = parse_rational(row[key].get<std::string>());
      const double f = row[std::string(key) + "_float"].get<double>();
      CHECK(Rational(std::nextafter(f, -1.0)) <= exact);
      CHECK(exact <= Rational(std::nextafter(f, 3.0)));
    }
  }
  CHECK(nlohmann::json::parse(rows.dump()) == rows);
}

TEST_CASE("--out writes to a file") {
  const auto path = scratch("table.csv");
  std::filesystem::remove(path);
  const auto r = run_cli({"tradeoff", "--k", "3", "--grid", "1/2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == "M,R_ach,R_conv,tight\n0,2,2,true\n1/2,6/5,6/5,true\n1,2/3,2/3,true\n3/2,1/4,1/4,true\n2,0,0,true\n");
  CHECK(run_cli({"tradeoff", "--k", "3", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}
