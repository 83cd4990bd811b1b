#pragma once

#include "polytope/integer.hpp"

#include <cstddef>
#include <span>

namespace polytope {

/// Symmetric table of norms and pairwise inner products.
///
/// On the wire only the upper triangle (i <= j) of the source-row table is
/// sent, row-major: (0,0), (0,1), ..., (0,m-1), (1,1), ...
class GramTable {
 public:
  GramTable() = default;
  explicit GramTable(std::size_t size);

  /// Gram table of the rows of `m` (m * m^T).
  static GramTable of_rows(const IntMatrix& m);
  static GramTable from_upper_triangle(std::span<const Integer> entries, std::size_t size);

  [[nodiscard]] std::size_t size() const noexcept { return values_.rows(); }
  [[nodiscard]] const Integer& at(std::size_t i, std::size_t j) const { return values_(i, j); }
  void set(std::size_t i, std::size_t j, const Integer& v);

  [[nodiscard]] IntVector upper_triangle() const;
  [[nodiscard]] const IntMatrix& matrix() const noexcept { return values_; }

  /// A * F * A^T: the table over every packet of a linear code.
  [[nodiscard]] GramTable extended(const IntMatrix& coefficients) const;

  friend bool operator==(const GramTable&, const GramTable&) = default;

 private:
  IntMatrix values_;
};

/// m norms plus C(m,2) inner products.
[[nodiscard]] constexpr std::size_t gram_entry_count(std::size_t m) { return m * (m + 1) / 2; }

}  // namespace polytope
