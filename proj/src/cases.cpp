#include "biharm/cases.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "biharm/errors.hpp"
#include "biharm/field.hpp"

#ifndef BIHARM_REGISTRY_DEFAULT
#define BIHARM_REGISTRY_DEFAULT "data/cases.json"
#endif

namespace biharm {

int CaseSpec::multiplicity_sum() const { return std::accumulate(multiplicities.begin(), multiplicities.end(), 0); }

const CaseTemplate* Registry::find(std::string_view name) const {
  for (const auto& c : cases)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// Recursive descent over  expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := integer | identifier | '-' factor | '(' expr ')'.
class ExprParser {
 public:
  ExprParser(std::string_view text, const ParamMap& params) : text_(text), params_(params) {}

  long parse_all() {
    const long v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " in expression '" + std::string(text_) + "'", "column " + std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  long expr() {
    long v = term();
    for (;;) {
      skip();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        const char op = text_[pos_++];
        const long rhs = term();
        v = op == '+' ? v + rhs : v - rhs;
      } else {
        return v;
      }
    }
  }

  long term() {
    long v = factor();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        v *= factor();
      } else {
        return v;
      }
    }
  }

  long factor() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char ch = text_[pos_];
    if (ch == '-') {
      ++pos_;
      return -factor();
    }
    if (ch == '(') {
      ++pos_;
      const long v = expr();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      long v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = v * 10 + (text_[pos_++] - '0');
      // implicit product such as "4m"
      skip();
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
        return v * factor();
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto it = params_.find(name);
      if (it == params_.end()) fail("unknown parameter '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const ParamMap& params_;
  std::size_t pos_ = 0;
};

std::string json_location(const std::string& source, const std::string& path) { return source + ":" + path; }

std::string require_string(const nlohmann::json& j, const char* key, const std::string& source,
                           const std::string& path) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw ParseError(std::string("missing or non-string field '") + key + "'", json_location(source, path));
  return j.at(key).get<std::string>();
}

std::string int_or_expr(const nlohmann::json& v, const std::string& source, const std::string& path) {
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_string()) return v.get<std::string>();
  throw ParseError("expected integer or expression string", json_location(source, path));
}

}  // namespace

long evaluate_int_expr(std::string_view expr, const ParamMap& params) { return ExprParser(expr, params).parse_all(); }

bool evaluate_bound(std::string_view bound, const ParamMap& params) {
  static constexpr std::string_view ops[] = {">=", "<=", "==", ">", "<"};
  for (std::string_view op : ops) {
    const auto pos = bound.find(op);
    if (pos == std::string_view::npos) continue;
    const long lhs = evaluate_int_expr(bound.substr(0, pos), params);
    const long rhs = evaluate_int_expr(bound.substr(pos + op.size()), params);
    if (op == ">=") return lhs >= rhs;
    if (op == "<=") return lhs <= rhs;
    if (op == "==") return lhs == rhs;
    if (op == ">") return lhs > rhs;
    return lhs < rhs;
  }
  throw ParseError("bound '" + std::string(bound) + "' has no comparison operator", "");
}

Registry parse_registry(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), source + ":byte " + std::to_string(e.byte));
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc.at("cases").is_array())
    throw ParseError("registry must be an object with a 'cases' array", source);
  Registry reg;
  reg.version = doc.value("version", 0);
  const auto& rows = doc.at("cases");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string path = "cases[" + std::to_string(k) + "]";
    const auto& row = rows[k];
    if (!row.is_object()) throw ParseError("row is not an object", json_location(source, path));
    CaseTemplate t;
    t.name = require_string(row, "name", source, path);
    t.group_label = require_string(row, "group", source, path);
    t.action_label = row.value("action", std::string());
    if (!row.contains("n")) throw ParseError("missing field 'n'", json_location(source, path));
    t.n_expr = int_or_expr(row.at("n"), source, path + ".n");
    if (!row.contains("d") || !row.at("d").is_number_integer())
      throw ParseError("missing or non-integer field 'd'", json_location(source, path));
    t.d = row.at("d").get<int>();
    if (!row.contains("multiplicities") || !row.at("multiplicities").is_array())
      throw ParseError("missing 'multiplicities' array", json_location(source, path));
    const auto& ms = row.at("multiplicities");
    for (std::size_t i = 0; i < ms.size(); ++i)
      t.multiplicity_exprs.push_back(int_or_expr(ms[i], source, path + ".multiplicities[" + std::to_string(i) + "]"));
    if (row.contains("params")) {
      if (!row.at("params").is_object()) throw ParseError("'params' must be an object", json_location(source, path));
      for (const auto& [key, value] : row.at("params").items()) {
        if (!value.is_number_integer())
          throw ParseError("parameter default must be an integer", json_location(source, path + ".params." + key));
        t.defaults[key] = value.get<long>();
      }
    }
    if (row.contains("bounds")) {
      for (const auto& b : row.at("bounds")) {
        if (!b.is_string()) throw ParseError("bound must be a string", json_location(source, path + ".bounds"));
        t.bounds.push_back({b.get<std::string>()});
      }
    }
    t.notes = row.value("notes", std::string());
    if (reg.find(t.name)) throw ParseError("duplicate case name '" + t.name + "'", json_location(source, path));
    reg.cases.push_back(std::move(t));
  }
  return reg;
}

Registry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry", path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str(), path.string());
}

std::filesystem::path default_registry_path() {
  if (const char* env = std::getenv("BIHARM_REGISTRY"); env && *env) return env;
  return BIHARM_REGISTRY_DEFAULT;
}

CaseSpec instantiate_case(const CaseTemplate& tmpl, const ParamMap& params) {
  ParamMap values = tmpl.defaults;
  for (const auto& [key, value] : params) {
    if (!tmpl.defaults.count(key))
      throw ValidationError("case " + tmpl.name + " has no parameter '" + key + "'");
    values[key] = value;
  }
  for (const auto& b : tmpl.bounds)
    if (!evaluate_bound(b.text, values)) throw ValidationError("case " + tmpl.name + ": bound " + b.text + " violated");
  CaseSpec c;
  c.name = tmpl.name;
  c.group_label = tmpl.group_label;
  c.action_label = tmpl.action_label;
  c.d = tmpl.d;
  c.n = static_cast<int>(evaluate_int_expr(tmpl.n_expr, values));
  for (const auto& m : tmpl.multiplicity_exprs) c.multiplicities.push_back(static_cast<int>(evaluate_int_expr(m, values)));
  c.parameters = values;
  return c;
}

std::vector<std::string> validate_case(const CaseSpec& c) {
  std::vector<std::string> out;
  if (!admissible_d(c.d)) out.push_back("d = " + std::to_string(c.d) + " is not one of 1, 2, 3, 4, 6");
  if (static_cast<int>(c.multiplicities.size()) != c.d)
    out.push_back("expected " + std::to_string(c.d) + " multiplicities, found " + std::to_string(c.multiplicities.size()));
  for (std::size_t i = 0; i < c.multiplicities.size(); ++i)
    if (c.multiplicities[i] < 1)
      out.push_back("multiplicity m_" + std::to_string(i) + " = " + std::to_string(c.multiplicities[i]) + " < 1");
  const int lhs = 1 + c.multiplicity_sum();
  if (lhs != c.n - 1)
    out.push_back("dimension identity fails: 1 + sum(m) = " + std::to_string(lhs) + " but n - 1 = " + std::to_string(c.n - 1));
  return out;
}

std::string case_label(const CaseSpec& c) {
  if (c.parameters.empty()) return c.name;
  std::string s = c.name + "[";
  bool first = true;
  for (const auto& [k, v] : c.parameters) {
    if (!first) s += ",";
    s += k + "=" + std::to_string(v);
    first = false;
  }
  return s + "]";
}

}  // namespace biharm
