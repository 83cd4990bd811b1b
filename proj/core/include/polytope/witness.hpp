#pragma once

// Totally undecodable received bundles for N = F(T), T > 1: several source
// realizations sharing one Gram table whose codewords each differ from a
// common received matrix in at most T rows, with every row index ambiguous.

#include "polytope/genmatrix.hpp"
#include "polytope/gram.hpp"
#include "polytope/integer.hpp"
#include "polytope/polytope_codec.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace polytope {

struct WitnessOptions {
  unsigned alphabet = 2;                  // K
  std::optional<Integer> last_mu;         // force mu_c instead of the smallest admissible value
  std::optional<IntMatrix> hadamard;      // replace the Sylvester matrix (rows must be +-1)
};

struct UndecodableWitness {
  std::size_t t = 0;
  std::size_t n = 0;                 // F(T)
  GeneratorMatrix generator;
  std::size_t hadamard_order = 0;    // L
  IntMatrix hadamard;
  std::size_t columns = 0;           // N0 = 2L before any scaling
  std::vector<IntVector> mu;         // mu_0 .. mu_{c-1}, each of length floor(T/2)
  std::vector<IntVector> nu;         // shifts matching mu
  Integer last_mu;                   // mu_c, paired with nu_c = 1
  std::vector<Integer> excluded;     // values of mu_c that would leave a parity row unambiguous
  unsigned alphabet = 2;             // K
  Integer group_len;                 // K0 = K^(max entry of X)
  IntMatrix source;                  // X, (N-T) x N0
  std::vector<IntMatrix> variants;   // X_0 .. X_c
  std::vector<IntMatrix> codewords;  // A X_i
  IntMatrix received;                // Y-bar, N x N0
  GramTable gram;                    // Gram of the rows of X
};

/// Requires T >= 2 and a rotation-0 generator with F(T) rows and N - T
/// columns. Throws ParameterError otherwise.
[[nodiscard]] UndecodableWitness undecodable_witness(std::size_t t, const GeneratorMatrix& a,
                                                     const WitnessOptions& options = {});
[[nodiscard]] UndecodableWitness undecodable_witness(std::size_t t, const WitnessOptions& options = {});

/// Positive integers mu for which row i of A X_0 and A X_c coincide for some
/// parity index i, given the rest of the construction.
[[nodiscard]] std::vector<Integer> excluded_last_mu(const UndecodableWitness& w);

struct PtcCheck {
  bool gram_matches = false;
  std::size_t rows_differing = 0;
  bool within_budget = false;
  bool parity_consistent = false;

  [[nodiscard]] bool passed() const noexcept { return gram_matches && within_budget && parity_consistent; }
};

struct WitnessReport {
  bool entries_positive = false;
  bool gram_invariant = false;
  std::vector<PtcCheck> ptc;                  // one per variant
  std::vector<std::size_t> unambiguous_rows;  // packet indices where all variants agree
  TrustedSet trusted;                         // decoder run on Y-bar
  std::vector<std::string> failures;

  [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

[[nodiscard]] WitnessReport verify_witness(const UndecodableWitness& w);

/// Repeats every column m2 times, then concatenates m1 copies of the result.
[[nodiscard]] UndecodableWitness scale_witness(const UndecodableWitness& w, std::size_t m1, std::size_t m2);

/// Prepends `extra` all-ones columns to every source realization.
[[nodiscard]] UndecodableWitness pad_witness(const UndecodableWitness& w, std::size_t extra);

}  // namespace polytope
