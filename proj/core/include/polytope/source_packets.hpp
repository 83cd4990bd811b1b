#pragma once

#include "polytope/gram.hpp"
#include "polytope/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polytope {

/// One source letter. Internally the alphabet is {0, ..., K-1}.
using Symbol = std::uint32_t;
using SymbolString = std::vector<Symbol>;

/// A K-ary source string viewed as an (N-T) x N0 matrix of integers in
/// {1, ..., K^K0}. Group g of K0 symbols lands at row g / N0, column g % N0.
struct SourceBlock {
  unsigned alphabet = 2;       // K
  std::size_t group_len = 1;   // K0
  std::size_t columns = 1;     // N0
  IntMatrix rows;              // (N-T) x N0

  friend bool operator==(const SourceBlock&, const SourceBlock&) = default;
};

/// Digit group (d_0, ..., d_{K0-1}) -> sum d_i K^i, with the all-zero group
/// standing for K^K0 so the image is exactly {1, ..., K^K0}.
[[nodiscard]] Integer pack_group(std::span<const Symbol> digits, unsigned k);

/// Inverse of pack_group.
[[nodiscard]] SymbolString unpack_block(const Integer& value, unsigned k, std::size_t k0);

[[nodiscard]] SourceBlock pack_source(std::span<const Symbol> symbols, unsigned k, std::size_t k0,
                                      std::size_t n0, std::size_t n, std::size_t t);
[[nodiscard]] SymbolString unpack_source(const SourceBlock& block);

/// Fixed per-packet symbol accounting for a single polytope layer.
struct PacketBudget {
  unsigned alphabet = 2;            // K
  std::size_t group_len = 1;        // K0
  std::size_t columns = 1;          // N0
  std::size_t dimension = 1;        // N - T
  std::size_t entry_width = 0;      // K0 + ceil(log_K(alpha_max (N-T)))
  std::size_t gram_width = 0;       // ceil(2 K0 + log_K N0)
  std::size_t gram_count = 0;       // (N-T) + C(N-T, 2)
  std::size_t total_symbols = 0;
  Rational rate;                    // total / (K0 N0 (N-T))
};

/// Smallest e >= 0 with k^e >= x (x >= 1).
[[nodiscard]] std::size_t ceil_log(unsigned k, const Integer& x);

[[nodiscard]] PacketBudget symbol_budget(std::size_t n, std::size_t t, unsigned k, std::size_t k0,
                                         std::size_t n0, const Integer& alpha_max);

/// Big-endian fixed-width K-ary layout: N0 codeword entries of entry_width
/// digits, then the upper-triangle Gram entries of gram_width digits. Each
/// field holds a value in {1..K^width}, all zeros standing for K^width;
/// anything else throws SerializationError.
[[nodiscard]] SymbolString serialize_packet(std::span<const Integer> codeword, const GramTable& gram,
                                            const PacketBudget& budget);

struct DeserializedPacket {
  IntVector codeword;
  GramTable gram;
};

[[nodiscard]] DeserializedPacket deserialize_packet(std::span<const Symbol> symbols,
                                                    const PacketBudget& budget);

/// Hex rendering of a symbol string: each symbol takes the number of hex
/// digits needed for K-1 (one digit when K <= 16).
[[nodiscard]] std::string symbols_to_hex(std::span<const Symbol> symbols, unsigned k);
[[nodiscard]] SymbolString symbols_from_hex(std::string_view hex, unsigned k);

}  // namespace polytope
