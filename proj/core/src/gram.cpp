#include "polytope/gram.hpp"

#include "polytope/error.hpp"

namespace polytope {

GramTable::GramTable(std::size_t size) : values_(size, size) {}

GramTable GramTable::of_rows(const IntMatrix& m) {
  GramTable g(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.rows(); ++j) g.set(i, j, dot(m.row(i), m.row(j)));
  return g;
}

GramTable GramTable::from_upper_triangle(std::span<const Integer> entries, std::size_t size) {
  if (entries.size() != gram_entry_count(size))
    throw ParameterError("GramTable: wrong number of upper-triangle entries");
  GramTable g(size);
  std::size_t k = 0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) g.set(i, j, entries[k++]);
  return g;
}

void GramTable::set(std::size_t i, std::size_t j, const Integer& v) {
  values_(i, j) = v;
  values_(j, i) = v;
}

IntVector GramTable::upper_triangle() const {
  IntVector out;
  out.reserve(gram_entry_count(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i; j < size(); ++j) out.push_back(values_(i, j));
  return out;
}

GramTable GramTable::extended(const IntMatrix& coefficients) const {
  if (coefficients.cols() != size()) throw ParameterError("GramTable::extended: width mismatch");
  IntMatrix af = multiply(coefficients, values_);
  GramTable out(coefficients.rows());
  out.values_ = multiply_transposed(af, coefficients);
  return out;
}

}  // namespace polytope
