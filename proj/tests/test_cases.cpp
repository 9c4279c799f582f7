#include <doctest.h>

#include "biharm/errors.hpp"
#include "support.hpp"

using namespace biharm;
using biharm::testing::registry;
using biharm::testing::spec;

TEST_CASE("registry rows satisfy the structural identities") {
  const Registry& reg = registry();
  CHECK(reg.cases.size() == 14);
  for (const auto& t : reg.cases) {
    CAPTURE(t.name);
    const CaseSpec c = instantiate_case(t);
    CHECK(validate_case(c).empty());
    CHECK(admissible_d(c.d));
    CHECK(static_cast<int>(c.multiplicities.size()) == c.d);
    CHECK(1 + c.multiplicity_sum() == c.n - 1);
  }
}

TEST_CASE("registry rows with known data") {
  const CaseSpec u5 = spec("U5");
  CHECK(u5.n == 20);
  CHECK(u5.d == 4);
  CHECK(u5.multiplicities == std::vector<int>{5, 4, 5, 4});
  CHECK(spec("G2").multiplicities == std::vector<int>(6, 2));
  CHECK(spec("SO4").n == 8);
  CHECK(spec("F4").multiplicities == std::vector<int>{8, 8, 8});
  CHECK(spec("SOnm1").multiplicities == std::vector<int>{1});
}

TEST_CASE("parametric rows") {
  const CaseSpec pq = spec("SOpxSOq", {{"p", 3}, {"q", 5}});
  CHECK(pq.n == 8);
  CHECK(pq.multiplicities == std::vector<int>{4, 2});
  CHECK(case_label(pq) == "SOpxSOq[p=3,q=5]");
  CHECK(spec("SO2xSOm").multiplicities == std::vector<int>{1, 1, 1, 1});
  CHECK(spec("SU2xUm").multiplicities == std::vector<int>{1, 2, 1, 2});
  CHECK(spec("Sp2xSpm").multiplicities == std::vector<int>{3, 4, 3, 4});
  const CaseSpec big = spec("SU2xUm", {{"m", 4}});
  CHECK(big.n == 16);
  CHECK(validate_case(big).empty());
  CHECK(spec("SOnm1", {{"n", 7}}).multiplicities == std::vector<int>{5});
  CHECK(case_label(spec("U5")) == "U5");
}

TEST_CASE("bound and parameter violations") {
  const CaseTemplate& t = *registry().find("SOpxSOq");
  CHECK_THROWS_WITH_AS(instantiate_case(t, {{"p", 1}, {"q", 5}}), doctest::Contains("bound p>=2 violated"), ValidationError);
  CHECK_THROWS_AS(instantiate_case(t, {{"r", 4}}), ValidationError);
  CHECK_THROWS_AS(instantiate_case(*registry().find("SO2xSOm"), {{"m", 2}}), ValidationError);
  CHECK(registry().find("nonsense") == nullptr);
}

TEST_CASE("validation messages") {
  CaseSpec c = spec("U5");
  c.n = 21;
  const auto v = validate_case(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "dimension identity fails: 1 + sum(m) = 19 but n - 1 = 20");
  c = spec("U5");
  c.d = 5;
  c.multiplicities.push_back(1);
  c.n = 21;
  CHECK(validate_case(c).size() == 1);
  c = spec("SO3");
  c.multiplicities = {1, 0, 2};
  CHECK(validate_case(c).size() == 1);
}

TEST_CASE("integer expressions and bounds") {
  const ParamMap p{{"m", 3}, {"p", 2}, {"q", 5}};
  CHECK(evaluate_int_expr("4m-5", p) == 7);
  CHECK(evaluate_int_expr("2*(p+q)-1", p) == 13);
  CHECK(evaluate_int_expr("-m+10", p) == 7);
  CHECK(evaluate_bound("p+q>=7", p));
  CHECK_FALSE(evaluate_bound("p>q", p));
  CHECK(evaluate_bound("2*m==6", p));
  CHECK_THROWS_AS(evaluate_int_expr("z+1", p), ParseError);
  CHECK_THROWS_AS(evaluate_int_expr("(m+1", p), ParseError);
  CHECK_THROWS_AS(evaluate_bound("m+1", p), ParseError);
}

TEST_CASE("malformed registries report a location") {
  CHECK_THROWS_WITH_AS(parse_registry("{\"cases\": [", "r.json"), doctest::Contains("r.json:byte"), ParseError);
  const std::string missing_d = R"({"version": 1, "cases": [{"name": "A", "group": "G", "n": 5, "multiplicities": [1]}]})";
  CHECK_THROWS_WITH_AS(parse_registry(missing_d, "r.json"), doctest::Contains("r.json:cases[0]"), ParseError);
  const std::string dup = R"({"version": 1, "cases": [
    {"name": "A", "group": "G", "n": 3, "d": 1, "multiplicities": [1]},
    {"name": "A", "group": "G", "n": 3, "d": 1, "multiplicities": [1]}]})";
  CHECK_THROWS_AS(parse_registry(dup), ParseError);
  CHECK_THROWS_AS(load_registry("/nonexistent/registry.json"), ParseError);
  const Registry one = parse_registry(R"({"version": 2, "cases": [{"name": "A", "group": "G", "n": 3, "d": 1, "multiplicities": [1]}]})");
  CHECK(one.version == 2);
  CHECK(one.cases.size() == 1);
}
