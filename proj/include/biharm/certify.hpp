#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/cases.hpp"
#include "biharm/poly.hpp"
#include "biharm/reduction.hpp"

namespace biharm {

inline constexpr long kDefaultPrecisionBits = 200;

/// Res_t(A_3 t^3 + ... + A_0, C_5 t^5 + ... + C_0) with formal degrees (3, 5).
/// Throws PipelineError if the result is not homogeneous.
SpatialPoly compute_resultant(const ReductionBundle& bundle);

struct ScanResult {
  std::vector<double> sigmas;  // ascending, inside (0, pi/d)
  int grid = 0;                // subintervals of the final grid
  std::vector<std::string> warnings;
};

/// Zeros of res(cos s, sin s) for s in (0, pi/d): sign changes on a uniform
/// grid, refined by bisection at `precision_bits`. The grid doubles until
/// the count of sign changes is stable, up to `max_grid`.
ScanResult chamber_root_scan(const SpatialPoly& res, int d, long precision_bits = kDefaultPrecisionBits,
                             int initial_grid = 512, int max_grid = 1 << 16);

struct LineClassification {
  bool minimal = false;
  double sum = 0.0;  // sum_i m_i cot(sigma - i pi/d)
};

inline constexpr double kPoleMargin = 1e-9;
inline constexpr double kMinimalityTolerance = 1e-9;

/// The straight profile at angle sigma has mean curvature proportional to the
/// cotangent sum; it is biharmonic exactly when that sum vanishes. Throws
/// DomainError within kPoleMargin of a pole of the sum.
LineClassification classify_line_minimality(const CaseSpec& c, double sigma);

/// Angles in (0, pi/d) where the cotangent sum vanishes (minimal cones).
std::vector<double> minimal_cone_angles(const CaseSpec& c);

struct RootRecord {
  double sigma = 0.0;
  std::optional<double> z;  // tan(sigma); empty for a vertical line
  bool line_is_minimal = false;
  double line_f_sum = 0.0;
};

struct ResultantSample {
  FieldScalar x, y, value;
};

struct Certificate {
  CaseSpec spec;
  std::optional<int> resultant_degree;  // empty when the resultant vanishes
  int expected_degree = 0;
  bool identically_zero = false;
  std::size_t resultant_terms = 0;
  std::vector<ResultantSample> samples;
  std::vector<RootRecord> roots;
  std::vector<std::string> warnings;
  int scan_grid = 0;
  std::string conclusion;
  long precision_bits = kDefaultPrecisionBits;
  double duration_ms = 0.0;
  std::string timestamp;
};

/// "nonexistence-certified", "inconclusive-resultant-vanishes" or "degree-mismatch".
std::string certificate_conclusion(bool identically_zero, std::optional<int> degree, int expected_degree);

/// Resultant values at the fixed rational points (1, 1/2), (3, 1), (2/3, 1/7).
std::vector<ResultantSample> resultant_samples(const SpatialPoly& res);

Certificate emit_certificate(const CaseSpec& c, const SpatialPoly& res, const ScanResult& scan,
                             long precision_bits, double duration_ms);

/// derive_bundle + compute_resultant + chamber_root_scan + emit_certificate.
Certificate certify_case(const CaseSpec& c, long precision_bits = kDefaultPrecisionBits);

nlohmann::json to_json(const Certificate& cert);
void write_certificate(const Certificate& cert, const std::filesystem::path& path);

}  // namespace biharm
