#pragma once

// Exact integer and rational linear algebra. Everything in the library is
// built on these types; there is no floating point on any decoding path.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace polytope {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<Integer> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<const Integer> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] IntVector row_vector(std::size_t r) const;
  void set_row(std::size_t r, std::span<const Integer> values);

  [[nodiscard]] IntMatrix select_rows(std::span<const std::size_t> indices) const;
  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] Integer max_entry() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

[[nodiscard]] IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
[[nodiscard]] IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
/// a * b^T without materialising the transpose.
[[nodiscard]] IntMatrix multiply_transposed(const IntMatrix& a, const IntMatrix& b);
[[nodiscard]] Integer dot(std::span<const Integer> a, std::span<const Integer> b);
[[nodiscard]] IntVector combine_rows(const IntMatrix& m, std::span<const Integer> coeffs);

[[nodiscard]] Integer ipow(const Integer& base, unsigned long exponent);

/// Fraction-free (Bareiss) determinant of a square matrix.
[[nodiscard]] Integer determinant(const IntMatrix& m);

/// Exact rank via fraction-free elimination.
[[nodiscard]] std::size_t rank(const IntMatrix& m);

/// Reduced row echelon form over the rationals. `pivots` receives the pivot
/// column of each nonzero row.
[[nodiscard]] RationalMatrix rational_rref(const IntMatrix& m, std::vector<std::size_t>& pivots);

struct LinearSolution {
  enum class Status { unique, inconsistent, underdetermined };
  Status status = Status::inconsistent;
  std::size_t rank = 0;
  RationalMatrix x;  // cols(a) x cols(b), filled when status == unique
};

/// Solves a * x = b exactly. `a` may be overdetermined; consistency of the
/// extra equations is checked.
[[nodiscard]] LinearSolution solve_exact(const IntMatrix& a, const IntMatrix& b);

/// Renders a rational as a decimal with a fixed number of fractional digits,
/// rounding half away from zero. Exact: no floating point involved.
[[nodiscard]] std::string to_fixed(const Rational& value, unsigned digits);

}  // namespace polytope
