#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/cases.hpp"
#include "biharm/rational.hpp"
#include "biharm/reduction.hpp"

namespace biharm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 2;
inline constexpr int kExitPipeline = 3;

/// "all" instantiates every registry row at its defaults; a name selects one
/// row, with `overrides` applied to its parameters. Throws ValidationError for
/// an unknown name or an override on a non-parametric row.
std::vector<CaseSpec> resolve_cases(const Registry& reg, const std::string& selector, const ParamMap& overrides);

/// "k=v" pairs into a parameter map; ValidationError on malformed input.
ParamMap parse_param_overrides(const std::vector<std::string>& items);

/// Walls, Q_d, V^2, T's, R and derivatives, A's, C's and their degrees.
nlohmann::json bundle_to_json(const ReductionBundle& b);
std::string bundle_to_text(const ReductionBundle& b);

struct ExampleReport {
  bool pass = false;
  std::optional<BigRational> lambda;  // derived = lambda * published
  std::vector<std::string> diffs;     // one line per disagreeing monomial
  bool symmetry_03 = false;           // A_0(x, y) = A_3(y, x)
  bool symmetry_12 = false;           // A_1(x, y) = A_2(y, x)
};

/// Published A-coefficients of the U(5) action, j = 0 .. 3.
std::array<SpatialPoly, 4> published_u5_coefficients();

/// Compare the derived A-coefficients of `c` with the published U(5) ones.
ExampleReport verify_paper_example(const CaseSpec& c);

/// Entry point of the command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biharm
