#include "biharm/resultant.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>

#include "biharm/errors.hpp"

namespace biharm {

PolyMatrix sylvester_matrix(std::span<const SpatialPoly> a, std::span<const SpatialPoly> c) {
  if (a.empty() || c.empty()) throw DomainError("sylvester_matrix: empty coefficient list");
  const std::size_t m = a.size() - 1;
  const std::size_t n = c.size() - 1;
  PolyMatrix s(m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = a[j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s(n + r, r + j) = c[j];
  return s;
}

SpatialPoly determinant_bareiss(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return SpatialPoly(1);
  bool negate = false;
  SpatialPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return {};
      for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
      negate = !negate;
    }
    const SpatialPoly& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        SpatialPoly v = pivot * m(i, j) - m(i, k) * m(k, j);
        if (k > 0) v = divide_exact(v, prev);
        m(i, j) = std::move(v);
      }
      m(i, k) = SpatialPoly();
    }
    prev = pivot;
  }
  SpatialPoly det = std::move(m(n - 1, n - 1));
  return negate ? -det : det;
}

SpatialPoly determinant_cofactor(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n > 20) throw DomainError("determinant_cofactor: matrix too large");
  if (n == 0) return SpatialPoly(1);
  // minor(row, cols) = det of rows row..n-1 restricted to the column set `cols`.
  std::unordered_map<std::uint32_t, SpatialPoly> memo;
  auto minor = [&](auto&& self, std::size_t row, std::uint32_t cols) -> SpatialPoly {
    if (row == n) return SpatialPoly(1);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    SpatialPoly sum;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1U << c))) continue;
      if (!m(row, c).is_zero()) {
        SpatialPoly term = m(row, c) * self(self, row + 1, cols & ~(1U << c));
        if (sign > 0) sum += term; else sum -= term;
      }
      sign = -sign;
    }
    memo.emplace(cols, sum);
    return sum;
  };
  return minor(minor, 0, (n == 32 ? 0U : (1U << n)) - 1U);
}

SpatialPoly sylvester_resultant(std::span<const SpatialPoly> a, std::span<const SpatialPoly> c) {
  auto tri = [](std::size_t k) { return k * (k - 1) / 2; };
  const std::size_t rows_a = c.size() - 1, rows_c = a.size() - 1;
  SpatialPoly det = determinant_bareiss(sylvester_matrix(a, c));
  return (tri(rows_a + rows_c) + tri(rows_a) + tri(rows_c)) % 2 ? -det : det;
}

}  // namespace biharm
