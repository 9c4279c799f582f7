#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace biharm {

using ParamMap = std::map<std::string, long>;

/// One concrete cohomogeneity-two action: orbit space of angle pi/d with
/// wall multiplicities m_0 .. m_{d-1}.
struct CaseSpec {
  std::string name;
  std::string group_label;
  std::string action_label;
  int n = 0;
  int d = 0;
  std::vector<int> multiplicities;
  ParamMap parameters;

  int multiplicity_sum() const;
};

/// Integer bound such as "p+q>=4" over the row parameters.
struct Bound {
  std::string text;
};

/// A registry row. Parametric rows keep n and the multiplicities as integer
/// expressions in their parameters; `defaults` holds the smallest admissible values.
struct CaseTemplate {
  std::string name;
  std::string group_label;
  std::string action_label;
  std::string n_expr;
  int d = 0;
  std::vector<std::string> multiplicity_exprs;
  ParamMap defaults;
  std::vector<Bound> bounds;
  std::string notes;

  bool parametric() const noexcept { return !defaults.empty(); }
};

struct Registry {
  int version = 0;
  std::vector<CaseTemplate> cases;

  /// nullptr when absent
  const CaseTemplate* find(std::string_view name) const;
};

/// Parse a registry document held in memory; `source` names it in error messages.
Registry parse_registry(std::string_view text, const std::string& source = "<registry>");
Registry load_registry(const std::filesystem::path& path);

/// Registry path from $BIHARM_REGISTRY, falling back to the copy shipped with the sources.
std::filesystem::path default_registry_path();

/// Evaluate an integer expression (+, -, *, parentheses, identifiers) in `params`.
long evaluate_int_expr(std::string_view expr, const ParamMap& params);
/// Evaluate a comparison "lhs OP rhs" with OP in >=, <=, >, <, ==.
bool evaluate_bound(std::string_view bound, const ParamMap& params);

/// Fill unspecified parameters from the row defaults, check the bounds and
/// evaluate n and the multiplicities. Throws ValidationError naming the failing bound.
CaseSpec instantiate_case(const CaseTemplate& tmpl, const ParamMap& params = {});

/// Dimension identity 1 + sum m_i = n - 1, admissible d, one multiplicity per wall, all m_i >= 1.
std::vector<std::string> validate_case(const CaseSpec& c);

/// "U5" or "SOpxSOq[p=2,q=3]"
std::string case_label(const CaseSpec& c);

}  // namespace biharm
