#include "polytope/genmatrix.hpp"

#include "polytope/combinations.hpp"
#include "polytope/error.hpp"

#include <numeric>

namespace polytope {

std::optional<std::size_t> GeneratorMatrix::source_row(std::size_t i) const {
  if (i >= n_packets) throw ParameterError("source_row: packet index out of range");
  const std::size_t base = (i + n_packets - rotation % n_packets) % n_packets;
  if (base < dimension) return base;
  return std::nullopt;
}

IntMatrix vandermonde_rows(const std::vector<Integer>& alphas, unsigned long first_power,
                           std::size_t width) {
  IntMatrix out(alphas.size(), width);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    Integer v = ipow(alphas[i], first_power);
    for (std::size_t j = 0; j < width; ++j) {
      out(i, j) = v;
      v *= alphas[i];
    }
  }
  return out;
}

namespace {

// Every width x width selection that includes the last row of `m` is nonsingular.
bool new_row_keeps_eligibility(const IntMatrix& m, std::size_t width) {
  const std::size_t last = m.rows() - 1;
  std::vector<std::size_t> sel(width);
  return for_each_combination(last, width - 1, [&](std::span<const std::size_t> pick) {
    std::copy(pick.begin(), pick.end(), sel.begin());
    sel.back() = last;
    return determinant(m.select_rows(sel)) != 0;
  });
}

}  // namespace

GeneratorMatrix build_v_matrix(std::size_t n, std::size_t t) {
  if (t > n) throw ParameterError("build_v_matrix: T must not exceed N");
  if (n == 0) throw ParameterError("build_v_matrix: N must be positive");
  const std::size_t width = n - t;

  GeneratorMatrix out;
  out.n_packets = n;
  out.dimension = width;
  out.rows = IntMatrix::identity(width);

  Integer candidate = 1;
  for (std::size_t step = 0; step < t; ++step) {
    while (true) {
      IntMatrix grown = vstack(out.rows, vandermonde_rows({candidate}, 1, width));
      if (width == 0 || new_row_keeps_eligibility(grown, width)) {
        out.rows = std::move(grown);
        out.alphas.push_back(candidate);
        break;
      }
      ++candidate;
    }
    ++candidate;
  }
  if (width == 0) out.rows = IntMatrix(n, 0);
  return out;
}

GeneratorMatrix rotate_generator(const GeneratorMatrix& a, std::size_t s) {
  const std::size_t n = a.n_packets;
  GeneratorMatrix out = a;
  if (n == 0) return out;
  s %= n;
  for (std::size_t i = 0; i < n; ++i) out.rows.set_row((i + s) % n, a.rows.row(i));
  out.rotation = (a.rotation + s) % n;
  return out;
}

bool all_submatrices_nonsingular(const IntMatrix& m, std::size_t width) {
  if (m.cols() != width || m.rows() < width)
    throw ParameterError("all_submatrices_nonsingular: need at least m rows and exactly m columns");
  return for_each_combination(m.rows(), width, [&](std::span<const std::size_t> pick) {
    return determinant(m.select_rows(pick)) != 0;
  });
}

IntVector integer_null_vector(const IntMatrix& lambda) {
  const std::size_t m = lambda.cols();
  if (m == 0) throw ParameterError("integer_null_vector: need at least one column");
  if (lambda.rows() + 1 != m)
    throw ParameterError("integer_null_vector: expected an (m-1) x m matrix");

  std::vector<std::size_t> pivots;
  RationalMatrix r = rational_rref(lambda, pivots);

  // First free column gets 1; pivot variables follow from the reduced rows.
  std::size_t free_col = 0;
  for (std::size_t p = 0; free_col < m; ++free_col) {
    if (p < pivots.size() && pivots[p] == free_col) {
      ++p;
      continue;
    }
    break;
  }
  std::vector<Rational> x(m, Rational(0));
  x[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][free_col];

  Integer lcm = 1;
  for (const auto& v : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  IntVector out(m);
  Integer g = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Rational scaled = x[i] * lcm;
    out[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  for (auto& v : out) v /= g;
  for (const auto& v : out) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& w : out) w = -w;
    break;
  }
  return out;
}

}  // namespace polytope
