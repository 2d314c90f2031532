#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "banach/cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "banach-geom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = banach::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Result r = run_cli(std::move(args));
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("bj-check", "[cli]") {
  json j = run_json({"bj-check", "--p", "inf", "--x", "1,1", "--y", "-0.5,1"});
  CHECK(j["schema"] == "v1");
  CHECK(j["orthogonal"] == true);
  CHECK(j["method"] == "exact");
  CHECK(j["d_minus"] == -0.5);
  CHECK(j["d_plus"] == 1);
  j = run_json({"bj-check", "--p", "2.5", "--x", "1,0", "--y", "1,1"});
  CHECK(j["orthogonal"] == false);
  CHECK(j["method"] == "derivative");
  j = run_json({"bj-check", "--p", "3", "--x", "1,1,0", "--y", "-1,1,2/3"});
  CHECK(j["orthogonal"] == true);

  Result r = run_cli({"bj-check", "--p", "inf", "--x", "0,0", "--y", "1,1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("'x'") != std::string::npos);
  r = run_cli({"bj-check", "--p", "inf", "--x", "1,a", "--y", "1,1"});
  CHECK(r.code == 2);
  r = run_cli({"bj-check", "--p", "0.3", "--x", "1,1", "--y", "1,1"});
  CHECK(r.code == 2);
}

TEST_CASE("mt-enum", "[cli]") {
  const Result r = run_cli({"mt-enum", "--json", R"({"p":{"int":3},"matrix":[["2","0"],["0","1"]]})"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out) == json::parse(R"({"schema":"v1","norm":2,"points":[[1,0],[-1,0]],"certificate":"exact"})"));

  json j = run_json({"mt-enum", "--json", R"({"p":"inf","matrix":[["3/4","1/4"],["1/4","-1/4"]]})"});
  CHECK(j["norm"] == 1);
  CHECK(j["points"] == json::parse("[[1,1],[-1,-1]]"));

  j = run_json({"mt-enum", "--json", R"({"p":1,"matrix":[[1,1],[0,0]]})"});
  CHECK(j["points"].size() == 4);
  CHECK(j.contains("edges"));

  j = run_json({"mt-enum", "--json", R"({"p":3,"matrix":[[0,2],[-2,0]]})"});
  CHECK(j["whole_sphere"] == true);
  CHECK(j["norm"] == 2);

  j = run_json({"mt-enum", "--details", "--json", R"({"p":4,"matrix":[["1","1/2"],["1/3","2"]]})"});
  CHECK(j["bound"] == 54);
  CHECK(j["regions"] == 1);
  CHECK(j["points"].size() % 2 == 0);

  CHECK(run_cli({"mt-enum", "--json", R"({"p":2.5,"matrix":[[1,0],[0,2]]})"}).code == 2);
  CHECK(run_cli({"mt-enum", "--json", R"({"p":3,"matrix":[[0,0],[0,0]]})"}).code == 2);
}

TEST_CASE("input errors name the field", "[cli]") {
  Result r = run_cli({"op-norm", "--json", R"({"p":3,"matrix":[[1,0],[0,1]})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("malformed JSON") != std::string::npos);
  r = run_cli({"op-norm", "--json", R"({"p":3})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("'matrix'") != std::string::npos);
  r = run_cli({"op-norm", "--json", R"({"matrix":[[1,0],[0,1]]})"});
  CHECK(r.err.find("'p'") != std::string::npos);
  r = run_cli({"op-norm", "--json", R"({"p":"x","matrix":[[1,0],[0,1]]})"});
  CHECK(r.err.find("'p'") != std::string::npos);
  r = run_cli({"op-norm", "--json", R"({"p":3,"matrix":[[1,0],[0,"1/0"]]})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("matrix[1][1]") != std::string::npos);
  r = run_cli({"op-norm", "--json", R"({"p":3,"matrix":[[1,0,3],[0,1]]})"});
  CHECK(r.err.find("'matrix'") != std::string::npos);
  r = run_cli({"op-norm", "--input", "/nonexistent/operator.json"});
  CHECK(r.code == 2);
  CHECK(run_cli({"no-such-command"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("op-norm, mt-numeric and daugavet", "[cli]") {
  json j = run_json({"op-norm", "--json", R"({"p":3,"matrix":[[2,0],[0,1]]})"});
  CHECK(std::abs(j["norm"].get<double>() - 2.0) < 1e-12);
  j = run_json({"op-norm", "--grid", "512", "--json", R"({"p":"inf","matrix":[[1,-2],[3,0.5]]})"});
  CHECK(j["norm"] == 3.5);

  j = run_json({"mt-numeric", "--json", R"({"p":2,"matrix":[[1,1],[1,1]]})"});
  CHECK(j["certificate"] == "numeric");
  CHECK(j["points"].size() == 2);

  j = run_json({"daugavet", "--json", R"({"p":2,"matrix":[[1,0],[0,0.5]]})"});
  CHECK(j["residual"] == 0);
  CHECK(j["satisfies"] == true);
  CHECK(j["invariant_line"] == true);
  j = run_json({"daugavet", "--json", R"({"p":3,"matrix":[[-1,0],[0,-1]]})"});
  CHECK(j["residual"] == 2);
  CHECK(j["satisfies"] == false);
  CHECK_FALSE(j.contains("fixed_point"));
}

TEST_CASE("operator file input", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() / "banach_cli_operator.json";
  std::ofstream(path) << R"({"p":{"int":3},"matrix":[["2","0"],["0","1"]]})";
  const json j = run_json({"mt-enum", "--input", path.string()});
  CHECK(j["norm"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("verify", "[cli]") {
  const std::vector<std::string> args{"verify", "pullback", "--p", "3", "--trials", "10", "--seed", "4"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["passed"] == true);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["suite"] == "pullback");
  CHECK(j["reports"][0]["trials"] == 10);
  CHECK_FALSE(j["reports"][0].contains("elapsed_seconds"));

  j = run_json({"verify", "nonsmooth-counterexample", "--trials", "4", "--timing"});
  CHECK(j["reports"].size() == 2);
  CHECK(j["reports"][0].contains("elapsed_seconds"));
  const std::string replay = j["reports"][1]["expected_violation_examples"][1]["replay"];
  CHECK(replay.rfind("banach-geom verify nonsmooth-counterexample --p inf --trial-seed ", 0) == 0);

  j = run_json({"verify", "--list"});
  CHECK(j["suites"].size() == 10);

  CHECK(run_cli({"verify", "no-such-suite"}).code == 2);
  CHECK(run_cli({"verify", "euclidean-doubleton", "--p", "3"}).code == 2);
  CHECK(run_cli({"verify"}).code == 2);
}

TEST_CASE("seed from the environment", "[cli]") {
  ::setenv("BANACH_GEOM_SEED", "99", 1);
  json j = run_json({"mt-scan", "--p", "3", "--count", "5"});
  CHECK(j["seed"] == 99);
  j = run_json({"mt-scan", "--p", "3", "--count", "5", "--seed", "2"});
  CHECK(j["seed"] == 2);
  ::setenv("BANACH_GEOM_SEED", "nope", 1);
  CHECK(run_cli({"mt-scan", "--count", "5"}).code == 2);
  ::unsetenv("BANACH_GEOM_SEED");
  j = run_json({"mt-scan", "--p", "2,4", "--count", "20"});
  REQUIRE(j["scans"].size() == 2);
  CHECK(j["scans"][0]["bound"] == 22);
  CHECK(j["scans"][1]["bound"] == 54);
  CHECK(j["scans"][0]["histogram"]["2"] == 20);
  CHECK(run_cli({"mt-scan", "--p", "inf", "--count", "5"}).code == 2);
}

TEST_CASE("sphere-image", "[cli]") {
  Result r = run_cli({"sphere-image", "--samples", "8", "--json", R"({"p":3,"matrix":[[2,0],[0,1]]})"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,z1,z2,Tz1,Tz2,norm");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.find("\n0,1,0,2,0,2\n") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "banach_cli_sphere.csv";
  r = run_cli({"sphere-image", "--samples", "3", "--output", path.string(), "--json",
               R"({"p":2,"matrix":[[1,0],[0,1]]})"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::getline(f, line);
  CHECK(line == "t,z1,z2,Tz1,Tz2,norm");
  std::filesystem::remove(path);
}

TEST_CASE("help", "[cli]") {
  const Result r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("mt-enum") != std::string::npos);
}
