#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biharm/poly.hpp"

namespace biharm {

/// Dense square matrix of SpatialPoly entries, row-major.
class PolyMatrix {
 public:
  explicit PolyMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  SpatialPoly& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const SpatialPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<SpatialPoly> data_;
};

/// Sylvester matrix of P(t) = sum a[j] t^j and C(t) = sum c[j] t^j with formal
/// degrees a.size()-1 and c.size()-1, vanishing leading coefficients included.
/// Rows hold coefficients in ascending powers of t, the first c.size()-1 rows
/// carrying shifts of a.
PolyMatrix sylvester_matrix(std::span<const SpatialPoly> a, std::span<const SpatialPoly> c);

/// Fraction-free Gaussian elimination with row pivoting. Each division by the
/// previous pivot is exact in the polynomial ring.
SpatialPoly determinant_bareiss(PolyMatrix m);

/// Laplace expansion along rows, memoised over column subsets (n <= 20).
SpatialPoly determinant_cofactor(const PolyMatrix& m);

/// Classical resultant prod_{P(u)=0} C(u) * lc(P)^deg(C) for formal degrees. The
/// ascending layout is a row and column reversal of the classical matrix, so
/// its determinant is corrected by the corresponding permutation sign.
SpatialPoly sylvester_resultant(std::span<const SpatialPoly> a, std::span<const SpatialPoly> c);

}  // namespace biharm
