#include "polytope/integer.hpp"

#include "polytope/error.hpp"

#include <algorithm>
#include <utility>

namespace polytope {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ParameterError("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

void IntMatrix::set_row(std::size_t r, std::span<const Integer> values) {
  if (values.size() != cols_) throw ParameterError("IntMatrix::set_row: width mismatch");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> indices) const {
  IntMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) out.set_row(i, row(indices[i]));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Integer IntMatrix::max_entry() const {
  Integer best = 0;
  for (const auto& v : data_)
    if (v > best) best = v;
  return best;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("multiply: inner dimensions differ");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

IntMatrix multiply_transposed(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw ParameterError("multiply_transposed: widths differ");
  IntMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = dot(a.row(i), b.row(j));
  return out;
}

IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw ParameterError("vstack: widths differ");
  IntMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) out.set_row(r, top.row(r));
  for (std::size_t r = 0; r < bottom.rows(); ++r) out.set_row(top.rows() + r, bottom.row(r));
  return out;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw ParameterError("dot: length mismatch");
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

IntVector combine_rows(const IntMatrix& m, std::span<const Integer> coeffs) {
  if (coeffs.size() != m.rows()) throw ParameterError("combine_rows: coefficient count mismatch");
  IntVector out(m.cols(), Integer(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (coeffs[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += coeffs[r] * m(r, c);
  }
  return out;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ParameterError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix w = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(w(k, c), w(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix w = m;
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && w(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(w(r, j), w(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = w(i, j) * w(r, c) - w(i, c) * w(r, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w(i, c) = 0;
    }
    prev = w(r, c);
    ++r;
  }
  return r;
}

namespace {

// Gauss-Jordan over the first `pivot_limit` columns.
void rref_in_place(RationalMatrix& w, std::size_t pivot_limit, std::vector<std::size_t>& pivots) {
  pivots.clear();
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && w[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(w[r], w[p]);
    const Rational inv = 1 / w[r][c];
    for (std::size_t j = c; j < cols; ++j) w[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || w[i][c] == 0) continue;
      const Rational f = w[i][c];
      for (std::size_t j = c; j < cols; ++j) w[i][j] -= f * w[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
}

RationalMatrix to_rational(const IntMatrix& m, std::size_t extra_cols = 0) {
  RationalMatrix w(m.rows(), std::vector<Rational>(m.cols() + extra_cols));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w[i][j] = m(i, j);
  return w;
}

}  // namespace

RationalMatrix rational_rref(const IntMatrix& m, std::vector<std::size_t>& pivots) {
  RationalMatrix w = to_rational(m);
  rref_in_place(w, m.cols(), pivots);
  return w;
}

LinearSolution solve_exact(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw ParameterError("solve_exact: row counts differ");
  const std::size_t n = a.cols();
  RationalMatrix w = to_rational(a, b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) w[i][n + j] = b(i, j);

  std::vector<std::size_t> pivots;
  rref_in_place(w, n, pivots);

  LinearSolution out;
  out.rank = pivots.size();
  for (std::size_t i = pivots.size(); i < w.size(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (w[i][n + j] != 0) {
        out.status = LinearSolution::Status::inconsistent;
        return out;
      }
    }
  }
  if (pivots.size() < n) {
    out.status = LinearSolution::Status::underdetermined;
    return out;
  }
  out.status = LinearSolution::Status::unique;
  out.x.assign(n, std::vector<Rational>(b.cols()));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.x[pivots[i]][j] = w[i][n + j];
  return out;
}

std::string to_fixed(const Rational& value, unsigned digits) {
  Integer scale = ipow(Integer(10), digits);
  Integer num = abs(value.get_num()) * scale;
  Integer den = value.get_den();
  Integer q = (2 * num + den) / (2 * den);
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (value < 0 && q != 0) s.insert(0, "-");
  return s;
}

}  // namespace polytope
