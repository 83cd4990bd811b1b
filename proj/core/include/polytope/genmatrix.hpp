#pragma once

#include "polytope/integer.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace polytope {

/// An eligible (N, N-T) generator matrix: N rows of width N-T, every
/// (N-T)x(N-T) row-submatrix nonsingular. For rotation 0 the top block is the
/// identity and, in V-matrix form, parity row t is (a_t, a_t^2, ..., a_t^{N-T}).
struct GeneratorMatrix {
  std::size_t n_packets = 0;
  std::size_t dimension = 0;  // N - T
  IntMatrix rows;
  std::vector<Integer> alphas;  // empty when not of V-matrix form
  std::size_t rotation = 0;

  [[nodiscard]] std::size_t redundancy() const noexcept { return n_packets - dimension; }

  /// Source row carried verbatim by packet `i`, or nullopt for a parity row.
  [[nodiscard]] std::optional<std::size_t> source_row(std::size_t i) const;

  /// Largest coefficient; drives the symbol width of parity entries.
  [[nodiscard]] Integer max_coefficient() const { return rows.max_entry(); }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;
};

/// Greedy V-matrix: at each induction step the smallest alpha exceeding the
/// previous one that keeps every maximal row-submatrix nonsingular.
[[nodiscard]] GeneratorMatrix build_v_matrix(std::size_t n, std::size_t t);

/// Cyclic downward row shift by `s` (row i moves to row (i + s) mod N).
[[nodiscard]] GeneratorMatrix rotate_generator(const GeneratorMatrix& a, std::size_t s);

/// True iff every m-row selection of `m` (which must have exactly m columns)
/// has nonzero determinant.
[[nodiscard]] bool all_submatrices_nonsingular(const IntMatrix& m, std::size_t width);

/// Nonzero integer vector x with lambda * x = 0 for an (m-1) x m matrix.
/// Normalised: entries divided by their gcd, first nonzero entry positive.
/// For m = 1 pass an empty 0x1 matrix; the result is (1).
[[nodiscard]] IntVector integer_null_vector(const IntMatrix& lambda);

/// Rows (a_i^k, a_i^{k+1}, ..., a_i^{k+width-1}) for each a_i.
[[nodiscard]] IntMatrix vandermonde_rows(const std::vector<Integer>& alphas, unsigned long first_power,
                                         std::size_t width);

}  // namespace polytope
