#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biharm/cli.hpp"
#include "biharm/errors.hpp"
#include "support.hpp"

using namespace biharm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "biharm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("biharm_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cases listing") {
  const Run r = run({"cases"});
  CHECK(r.code == 0);
  CHECK(r.out.find("U1xSpin10") != std::string::npos);
  const Run j = run({"cases", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).size() == 14);
}

TEST_CASE("derive") {
  const Run r = run({"derive", "--case", "U5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["A"].size() == 4);
  CHECK(j["A"][0]["degree"] == "9");
  CHECK(j["C"][5]["degree"] == "12");
  const Run pq = run({"derive", "--case", "SOpxSOq", "--param", "p=2", "--param", "q=2", "--format", "json"});
  REQUIRE(pq.code == 0);
  CHECK(nlohmann::json::parse(pq.out)["d"] == 2);
  CHECK(run({"derive", "--case", "nonsense"}).code == 2);
  CHECK(run({"derive", "--case", "U5", "--param", "p=2"}).code == 2);
  CHECK(run({"derive", "--case", "SOpxSOq", "--param", "p2"}).code == 2);
  CHECK(run({"derive", "--case", "SOpxSOq", "--param", "p=1"}).code == 2);
  CHECK(run({"derive"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("certify writes one certificate per case") {
  const fs::path dir = scratch_dir("certify");
  const Run r = run({"certify", "--case", "SOpxSOq", "--param", "p=3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("nonexistence-certified") != std::string::npos);
  const fs::path cert = dir / "SOpxSOq_p_3_q_2.cert.json";
  REQUIRE(fs::exists(cert));
  std::ifstream in(cert);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["resultant_degree"] == 27);
  CHECK(j["params"]["p"] == 3);
  CHECK(run({"certify", "--case", "nope", "--out", dir.string()}).code == 2);
  CHECK(run({"certify", "--case", "all", "--param", "p=3", "--out", dir.string()}).code == 2);
}

TEST_CASE("integrate") {
  const fs::path dir = scratch_dir("integrate");
  const fs::path csv = dir / "t.csv";
  const Run r = run({"integrate", "--case", "SU3", "--mode", "minimal", "--x0", "1", "--y0", "0.3", "--angle", "0.7",
                     "--steps", "200", "--out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("max|f|") != std::string::npos);
  std::ifstream in(csv);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 201);

  const Run zero = run({"integrate", "--case", "SU3", "--steps", "0", "--out", "-"});
  REQUIRE(zero.code == 0);
  CHECK(zero.out == "s,x,y,xd,yd,f,A2,res_poly,res_ode\n" + zero.out.substr(zero.out.find('\n') + 1));
  CHECK(std::count(zero.out.begin(), zero.out.end(), '\n') == 2);

  CHECK(run({"integrate", "--case", "SU3", "--y0", "-1", "--out", "-"}).code == 2);
  CHECK(run({"integrate", "--case", "SU3", "--mode", "adaptive", "--out", "-"}).code == 2);
  CHECK(run({"integrate", "--case", "SU3", "--h", "-1", "--out", "-"}).code == 2);
}

TEST_CASE("published example verification") {
  const Run r = run({"verify-paper-example"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda: 1/36") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);

  const fs::path dir = scratch_dir("registry");
  std::ifstream src(BIHARM_TEST_REGISTRY);
  auto reg = nlohmann::json::parse(src);
  for (auto& row : reg["cases"])
    if (row["name"] == "U5") {
      row["multiplicities"][0] = 4;
      row["n"] = 19;
    }
  const fs::path path = dir / "cases.json";
  std::ofstream(path) << reg.dump();
  const Run bad = run({"--registry", path.string(), "verify-paper-example"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.out.find("diff A") != std::string::npos);
}

TEST_CASE("resolve_cases") {
  const Registry& reg = biharm::testing::registry();
  CHECK(resolve_cases(reg, "all", {}).size() == 14);
  CHECK(resolve_cases(reg, "SO2xSOm", {{"m", 5}}).front().n == 10);
  CHECK_THROWS_AS(resolve_cases(reg, "missing", {}), ValidationError);
  CHECK(parse_param_overrides({"p=3", "q=-1"}) == ParamMap{{"p", 3}, {"q", -1}});
  CHECK_THROWS_AS(parse_param_overrides({"p=x"}), ValidationError);
}
