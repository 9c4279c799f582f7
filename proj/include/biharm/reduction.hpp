#pragma once

#include <array>
#include <utility>
#include <vector>

#include "biharm/cases.hpp"
#include "biharm/poly.hpp"

namespace biharm {

struct ChamberData {
  SpatialPoly qd;         // product of the walls
  SpatialPoly volume_sq;  // product of wall^(2 m_i), unnormalised
};

/// Every polynomial of the reduction for one case. Immutable once built.
struct ReductionBundle {
  CaseSpec spec;
  std::vector<SpatialPoly> walls;
  SpatialPoly qd;
  SpatialPoly volume_sq;
  SpatialPoly t1, t2;
  std::array<SpatialPoly, 3> t345;
  ReducedExpr r, r_dot, r_ddot;
  std::array<SpatialPoly, 4> a_coeffs;  // A_j multiplies xd^(3-j) yd^j
  std::array<SpatialPoly, 6> c_coeffs;  // C_j multiplies (dy/dx)^j
};

/// w_i = x sin(i pi/d) - y cos(i pi/d), i = 0 .. d-1.
std::vector<SpatialPoly> build_walls(const CaseSpec& c);
ChamberData build_chamber_data(const CaseSpec& c);

/// (T1, T2) with  (1/2) d/ds ln V^2 = (T1 xd + T2 yd) / Q_d.
std::pair<SpatialPoly, SpatialPoly> build_T12(const CaseSpec& c);

/// R = sum m_i k_i = (-T2 xd + T1 yd) / Q_d.
ReducedExpr build_R(const CaseSpec& c);

/// (T3, T4, T5) with  R^2/9 + sum m_i k_i^2 = (T3 xd^2 + T4 xd yd + T5 yd^2) / Q_d^2.
std::array<SpatialPoly, 3> build_T345(const CaseSpec& c);

/// (dR/ds, d^2R/ds^2) under the candidate rules xdd = (R/3) yd, ydd = -(R/3) xd.
std::pair<ReducedExpr, ReducedExpr> derive_R_derivatives(const CaseSpec& c);

/// Coefficients of the velocity-cubic form Q_d^3 * (normal equation in R).
std::array<SpatialPoly, 4> assemble_A(const CaseSpec& c);

/// Coefficients of the quintic in dy/dx obtained by differentiating the
/// A-cubic along the curve.
std::array<SpatialPoly, 6> assemble_C(const CaseSpec& c);
std::array<SpatialPoly, 6> assemble_C(const std::array<SpatialPoly, 4>& a, const SpatialPoly& qd,
                                      const SpatialPoly& t1, const SpatialPoly& t2);

/// Full pipeline with every degree claim checked; a failed claim throws PipelineError.
ReductionBundle derive_bundle(const CaseSpec& c);

/// For each wall: k_i as -(1/2) nu(ln w_i^2) and as w_i(yd, -xd) / w_i, both over Q_d.
std::vector<std::pair<ReducedExpr, ReducedExpr>> wall_curvature_forms(const CaseSpec& c);

}  // namespace biharm
