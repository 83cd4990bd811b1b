#include "polytope/witness.hpp"

#include "polytope/adversary.hpp"
#include "polytope/error.hpp"

#include <algorithm>
#include <string>

namespace polytope {

namespace {

struct Shape {
  std::size_t half_floor;  // floor(T/2): rows per block
  std::size_t half_ceil;   // ceil(T/2): number of full blocks
  std::size_t dimension;   // N - T
};

Shape shape_of(const UndecodableWitness& w) { return {w.t / 2, (w.t + 1) / 2, w.n - w.t}; }

// Source realization: block `flip` (if any) uses the negated Hadamard row.
IntMatrix build_source(const UndecodableWitness& w, const Integer& last_mu, std::optional<std::size_t> flip) {
  const Shape s = shape_of(w);
  const std::size_t pairs = w.hadamard.cols();
  IntMatrix x(s.dimension, 2 * pairs);
  auto place = [&](std::size_t row, std::size_t block, const Integer& nu, const Integer& mu) {
    for (std::size_t j = 0; j < pairs; ++j) {
      Integer sign = w.hadamard(block, j);
      if (flip && *flip == block) sign = -sign;
      x(row, 2 * j) = sign > 0 ? nu : Integer(nu + mu);
      x(row, 2 * j + 1) = sign > 0 ? Integer(nu + mu) : nu;
    }
  };
  for (std::size_t b = 0; b < s.half_ceil; ++b)
    for (std::size_t q = 0; q < s.half_floor; ++q) place(b * s.half_floor + q, b, w.nu[b][q], w.mu[b][q]);
  place(s.dimension - 1, s.half_ceil, 1, last_mu);
  return x;
}

std::vector<Integer> solve_exclusions(const UndecodableWitness& w) {
  const Shape s = shape_of(w);
  const IntMatrix& a = w.generator.rows;
  // Row i of A (X_c - X_0) is affine in mu_c: u + mu v.
  const IntMatrix d0 = multiply(a, [&] {
    IntMatrix diff = build_source(w, 0, s.half_ceil);
    const IntMatrix base = build_source(w, 0, 0);
    for (std::size_t r = 0; r < diff.rows(); ++r)
      for (std::size_t c = 0; c < diff.cols(); ++c) diff(r, c) -= base(r, c);
    return diff;
  }());
  const IntMatrix d1 = multiply(a, [&] {
    IntMatrix diff = build_source(w, 1, s.half_ceil);
    const IntMatrix base = build_source(w, 1, 0);
    for (std::size_t r = 0; r < diff.rows(); ++r)
      for (std::size_t c = 0; c < diff.cols(); ++c) diff(r, c) -= base(r, c);
    return diff;
  }());

  std::vector<Integer> out;
  for (std::size_t i = s.dimension; i < w.n; ++i) {
    std::optional<Rational> root;
    bool always = true;
    bool never = false;
    for (std::size_t c = 0; c < d0.cols() && !never; ++c) {
      const Integer u = d0(i, c);
      const Integer v = d1(i, c) - u;
      if (v == 0) {
        if (u != 0) never = true;
        continue;
      }
      always = false;
      Rational r(-u, v);
      r.canonicalize();
      if (root && *root != r) never = true;
      root = r;
    }
    if (never) continue;
    if (always) throw ParameterError("witness: parity row " + std::to_string(i) + " never separates X_0 and X_c");
    if (root->get_den() == 1 && root->get_num() > 0) out.push_back(root->get_num());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntMatrix map_columns(const IntMatrix& m, std::size_t m1, std::size_t m2) {
  IntMatrix out(m.rows(), m.cols() * m1 * m2);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t copy = 0; copy < m1; ++copy)
      for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t k = 0; k < m2; ++k) out(r, copy * m.cols() * m2 + c * m2 + k) = m(r, c);
  return out;
}

IntMatrix prepend_columns(const IntMatrix& m, const IntVector& column, std::size_t extra) {
  IntMatrix out(m.rows(), m.cols() + extra);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < extra; ++c) out(r, c) = column[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, extra + c) = m(r, c);
  }
  return out;
}

}  // namespace

std::vector<Integer> excluded_last_mu(const UndecodableWitness& w) { return solve_exclusions(w); }

UndecodableWitness undecodable_witness(std::size_t t, const GeneratorMatrix& a, const WitnessOptions& options) {
  if (t < 2) throw ParameterError("undecodable witness requires T >= 2");
  const std::size_t n = max_untrusted(t);
  if (a.n_packets != n || a.dimension != n - t || a.rotation != 0)
    throw ParameterError("undecodable witness requires an unrotated generator with N = F(T) rows and N - T columns");
  if (options.alphabet < 2) throw ParameterError("alphabet size K must be at least 2");

  UndecodableWitness w;
  w.t = t;
  w.n = n;
  w.generator = a;
  w.alphabet = options.alphabet;
  const std::size_t h = t / 2;
  const std::size_t c = (t + 1) / 2;
  const std::size_t m = n - t;

  for (std::size_t i = 0; i < c; ++i) {
    IntMatrix lambda(h - 1, h);
    for (std::size_t p = 0; p + 1 < h; ++p)
      for (std::size_t q = 0; q < h; ++q) lambda(p, q) = a.rows(m + p, i * h + q);
    IntVector mu = integer_null_vector(lambda);
    IntVector nu(h);
    for (std::size_t q = 0; q < h; ++q) nu[q] = std::max(Integer(1), Integer(1 - mu[q]));
    w.mu.push_back(std::move(mu));
    w.nu.push_back(std::move(nu));
  }

  if (options.hadamard) {
    w.hadamard = *options.hadamard;
    if (w.hadamard.rows() < c + 1 || w.hadamard.cols() == 0)
      throw ParameterError("witness Hadamard matrix needs at least ceil(T/2) + 1 rows");
    for (std::size_t r = 0; r < w.hadamard.rows(); ++r)
      for (const auto& v : w.hadamard.row(r))
        if (v != 1 && v != -1) throw ParameterError("witness Hadamard entries must be +1 or -1");
    w.hadamard_order = w.hadamard.cols();
  } else {
    std::size_t order = 1;
    while (order < c + 1) order *= 2;
    w.hadamard_order = order;
    w.hadamard = sylvester_hadamard(order);
  }
  w.columns = 2 * w.hadamard.cols();

  w.excluded = solve_exclusions(w);
  if (options.last_mu) {
    if (*options.last_mu < 0) throw ParameterError("witness: mu_c must be nonnegative");
    w.last_mu = *options.last_mu;
  } else {
    w.last_mu = 1;
    while (std::binary_search(w.excluded.begin(), w.excluded.end(), w.last_mu)) ++w.last_mu;
  }

  w.source = build_source(w, w.last_mu, std::nullopt);
  for (std::size_t i = 0; i <= c; ++i) w.variants.push_back(build_source(w, w.last_mu, i));
  for (const auto& x : w.variants) w.codewords.push_back(multiply(a.rows, x));
  w.gram = GramTable::of_rows(w.source);
  w.group_len = ipow(Integer(w.alphabet), w.source.max_entry().get_ui());

  const IntMatrix base = multiply(a.rows, w.source);
  w.received = IntMatrix(n, w.columns);
  for (std::size_t r = 0; r + 1 < m + h; ++r) w.received.set_row(r, base.row(r));
  for (std::size_t p = 0; p <= c; ++p) {
    const std::size_t r = m + h - 1 + p;
    w.received.set_row(r, w.codewords[p].row(r));
  }
  return w;
}

UndecodableWitness undecodable_witness(std::size_t t, const WitnessOptions& options) {
  if (t < 2) throw ParameterError("undecodable witness requires T >= 2");
  return undecodable_witness(t, build_v_matrix(max_untrusted(t), t), options);
}

WitnessReport verify_witness(const UndecodableWitness& w) {
  WitnessReport report;
  const std::size_t m = w.n - w.t;
  const IntMatrix& a = w.generator.rows;

  report.entries_positive = true;
  auto positive = [](const IntMatrix& x) {
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (const auto& v : x.row(r))
        if (v < 1) return false;
    return true;
  };
  report.entries_positive = positive(w.source);
  for (const auto& x : w.variants) report.entries_positive = report.entries_positive && positive(x);
  if (!report.entries_positive) report.failures.push_back("source realization has a non-positive entry");

  report.gram_invariant = GramTable::of_rows(w.source) == w.gram;
  for (std::size_t i = 0; i < w.variants.size(); ++i) {
    if (GramTable::of_rows(w.variants[i]) != w.gram) {
      report.gram_invariant = false;
      report.failures.push_back("Gram table of X_" + std::to_string(i) + " differs from that of X");
    }
  }

  const GramTable extended = w.gram.extended(a);
  for (std::size_t i = 0; i < w.codewords.size(); ++i) {
    const IntMatrix& xbar = w.codewords[i];
    PtcCheck check;
    check.gram_matches = GramTable::of_rows(xbar) == extended;
    for (std::size_t r = 0; r < w.n; ++r)
      if (!std::equal(xbar.row(r).begin(), xbar.row(r).end(), w.received.row(r).begin())) ++check.rows_differing;
    check.within_budget = check.rows_differing <= w.t;
    IntMatrix systematic(m, xbar.cols());
    for (std::size_t r = 0; r < m; ++r) systematic.set_row(r, xbar.row(r));
    check.parity_consistent = multiply(a, systematic) == xbar;
    const std::string name = "A X_" + std::to_string(i);
    if (!check.gram_matches) report.failures.push_back(name + " violates the Gram table");
    if (!check.within_budget)
      report.failures.push_back(name + " differs from the received matrix in " +
                                std::to_string(check.rows_differing) + " rows");
    if (!check.parity_consistent) report.failures.push_back(name + " is not a codeword of A");
    report.ptc.push_back(check);
  }

  for (std::size_t r = 0; r < w.n; ++r) {
    bool ambiguous = false;
    for (std::size_t i = 1; i < w.codewords.size() && !ambiguous; ++i)
      ambiguous = !std::equal(w.codewords[0].row(r).begin(), w.codewords[0].row(r).end(),
                              w.codewords[i].row(r).begin());
    if (!ambiguous) {
      report.unambiguous_rows.push_back(r);
      report.failures.push_back("packet " + std::to_string(r) + " is identical across all variants");
    }
  }

  ReceivedBundle received;
  for (std::size_t r = 0; r < w.n; ++r) received.packets.push_back({w.received.row_vector(r), w.gram});
  report.trusted = trusted_set(build_syndrome_graph(received, extended), w.t);
  if (!report.trusted.trusted.empty())
    report.failures.push_back("decoder certifies " + std::to_string(report.trusted.trusted.size()) + " packets");
  return report;
}

UndecodableWitness scale_witness(const UndecodableWitness& w, std::size_t m1, std::size_t m2) {
  if (m1 == 0 || m2 == 0) throw ParameterError("scale_witness: factors must be positive");
  UndecodableWitness out = w;
  out.source = map_columns(w.source, m1, m2);
  for (auto& x : out.variants) x = map_columns(x, m1, m2);
  for (auto& x : out.codewords) x = map_columns(x, m1, m2);
  out.received = map_columns(w.received, m1, m2);
  out.gram = GramTable::of_rows(out.source);
  out.columns = out.source.cols();
  return out;
}

UndecodableWitness pad_witness(const UndecodableWitness& w, std::size_t extra) {
  UndecodableWitness out = w;
  const IntVector ones(w.source.rows(), Integer(1));
  out.source = prepend_columns(w.source, ones, extra);
  for (auto& x : out.variants) x = prepend_columns(x, ones, extra);
  out.codewords.clear();
  for (const auto& x : out.variants) out.codewords.push_back(multiply(w.generator.rows, x));
  IntVector row_sums(w.n);
  for (std::size_t r = 0; r < w.n; ++r)
    for (const auto& v : w.generator.rows.row(r)) row_sums[r] += v;
  out.received = prepend_columns(w.received, row_sums, extra);
  out.gram = GramTable::of_rows(out.source);
  out.columns = out.source.cols();
  return out;
}

}  // namespace polytope
