#pragma once

// Layered variable packet-error code: N polytope layers whose generators are
// the N row rotations of one V-matrix, decoded through the intersection of
// the per-layer syndrome graphs. Also the rate-distortion calculators and the
// three-packet repetition scheme for N = 3, T = 1.

#include "polytope/genmatrix.hpp"
#include "polytope/gram.hpp"
#include "polytope/integer.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/source_packets.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace polytope {

/// Source estimate; nullopt is the erasure marker.
using Reconstruction = std::vector<std::optional<Symbol>>;

/// Rational distortion or +infinity.
struct Distortion {
  bool infinite = false;
  Rational value;

  static Distortion infinity() { return {true, 0}; }
  friend bool operator==(const Distortion& a, const Distortion& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

/// 0 per matching symbol, 1 per erasure, +infinity if any symbol is wrong;
/// averaged over the length.
[[nodiscard]] Distortion erasure_distortion(std::span<const Symbol> source, const Reconstruction& estimate);

struct VpecCodeParams {
  std::size_t n = 0;
  std::size_t t = 0;
  unsigned alphabet = 2;
  std::size_t group_len = 1;
  std::size_t columns = 1;
  GeneratorMatrix base;
  std::vector<GeneratorMatrix> layers;  // layers[s] = rotate_generator(base, s)

  /// Symbols in one layer: (N-T) N0 K0.
  [[nodiscard]] std::size_t layer_symbols() const noexcept { return (n - t) * columns * group_len; }
  [[nodiscard]] std::size_t source_length() const noexcept { return n * layer_symbols(); }
  /// N >= F(T) + 1: the partial-decoding guarantee applies.
  [[nodiscard]] bool guarantee_applies() const noexcept { return n >= max_untrusted(t) + 1; }
};

/// Requires N >= 2T + 1 so the Gram tables can be majority-recovered.
[[nodiscard]] VpecCodeParams make_vpec_params(std::size_t n, std::size_t t, unsigned k, std::size_t k0,
                                              std::size_t n0);

struct VpecPacket {
  std::vector<IntVector> codewords;  // one per layer
  std::vector<GramTable> grams;      // one per layer

  friend bool operator==(const VpecPacket&, const VpecPacket&) = default;
};

struct VpecTransmission {
  std::vector<TransmittedBundle> layers;

  [[nodiscard]] std::vector<VpecPacket> packets() const;
};

/// The source is split layer-major: layer s takes symbols
/// [s L, (s+1) L) with L = layer_symbols(), packed row-major as a SourceBlock.
[[nodiscard]] VpecTransmission vpec_encode(std::span<const Symbol> source, const VpecCodeParams& params);

struct VpecDecodeReport {
  Reconstruction estimate;
  SyndromeGraph graph;  // intersection over layers
  TrustedSet trusted;
  bool gram_majority_failed = false;
};

/// Never throws on adversarial content; a failed Gram majority yields an
/// all-erasure estimate.
[[nodiscard]] VpecDecodeReport vpec_decode(std::span<const VpecPacket> received, const VpecCodeParams& params);

/// (layer, source row) carried verbatim by packet `i`, one entry per layer in
/// which the packet is systematic.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> systematic_assignments(
    const VpecCodeParams& params, std::size_t i);

/// Per-packet rate of the layered code; identical to one layer's budget.
[[nodiscard]] PacketBudget vpec_budget(const VpecCodeParams& params);

struct RdRow {
  Rational rate;
  bool feasible = false;   // rate >= 1/(N-T)
  Distortion polytope;     // layered polytope code, time-shared to 1/(N-2T)
  Rational mds_raw;        // time-sharing line between the two MDS points
  Distortion mds;          // raw line clamped to [0, 1]
};

/// Requires T >= 1 and N >= F(T) + 1. Rates below 1/(N-T) are infeasible and
/// carry infinite distortion; rates at or above 1/(N-2T) carry 0.
[[nodiscard]] RdRow rd_point(std::size_t n, std::size_t t, const Rational& rate);
[[nodiscard]] std::vector<RdRow> rd_tables(std::size_t n, std::size_t t, std::span<const Rational> rates);

/// Three-packet scheme for N = 3, T = 1 and source (x0, x1, x2): packet p
/// carries (x_p, x_{p+1 mod 3}).
using ThreePacketBundle = std::array<std::array<Symbol, 2>, 3>;

[[nodiscard]] ThreePacketBundle three_packet_encode(const std::array<Symbol, 3>& source);
[[nodiscard]] Reconstruction three_packet_decode(const ThreePacketBundle& received);

}  // namespace polytope
