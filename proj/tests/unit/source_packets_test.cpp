#include "polytope/error.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/source_packets.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

namespace polytope {
namespace {

SymbolString digits(std::initializer_list<Symbol> d) { return SymbolString(d); }

TEST(PackGroup, LittleEndianDigitsWithAllZeroAsTop) {
  EXPECT_EQ(pack_group(digits({1, 0}), 2), 1);
  EXPECT_EQ(pack_group(digits({0, 1}), 2), 2);
  EXPECT_EQ(pack_group(digits({1, 1}), 2), 3);
  EXPECT_EQ(pack_group(digits({0, 0}), 2), 4);
  std::set<Integer> image;
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b) image.insert(pack_group(digits({a, b}), 2));
  EXPECT_EQ(image, (std::set<Integer>{1, 2, 3, 4}));
}

TEST(PackGroup, RejectsSymbolsOutsideAlphabet) {
  EXPECT_THROW((void)pack_group(digits({2, 0}), 2), ParameterError);
  EXPECT_THROW((void)pack_group(digits({0}), 1), ParameterError);
}

TEST(UnpackBlock, InvertsPackGroup) {
  EXPECT_EQ(unpack_block(4, 2, 2), digits({0, 0}));
  EXPECT_EQ(unpack_block(1, 2, 2), digits({1, 0}));
  EXPECT_THROW((void)unpack_block(5, 2, 2), ParameterError);
  EXPECT_THROW((void)unpack_block(0, 2, 2), ParameterError);
}

TEST(PackSource, GroupsFillRowsLeftToRight) {
  // K = 2, K0 = 2, N0 = 2, N - T = 2: four groups.
  const SymbolString s{1, 0, 0, 1, 1, 1, 0, 0};
  const auto block = pack_source(s, 2, 2, 2, 3, 1);
  EXPECT_EQ(block.rows, (IntMatrix{{1, 2}, {3, 4}}));
  EXPECT_EQ(unpack_source(block), s);
  EXPECT_THROW((void)pack_source(SymbolString(7, 0), 2, 2, 2, 3, 1), ParameterError);
}

TEST(SymbolBudget, SmallInstanceMatchesHandExpansion) {
  const auto b = symbol_budget(3, 1, 2, 4, 4, 1);
  EXPECT_EQ(b.entry_width, 5U);
  EXPECT_EQ(b.gram_width, 10U);
  EXPECT_EQ(b.gram_count, 3U);
  EXPECT_EQ(b.total_symbols, 50U);
  EXPECT_EQ(b.rate, Rational(25, 16));
  EXPECT_EQ(b.rate, testing::expanded_rate(3, 1, 2, 4, 4, 1));
}

TEST(SymbolBudget, LargeBlocksApproachOneHalf) {
  const auto b = symbol_budget(3, 1, 2, 4096, 4096, 1);
  EXPECT_LE(b.rate, Rational(51, 100));
  EXPECT_GT(b.rate, Rational(1, 2));
}

TEST(CeilLog, SmallestCoveringExponent) {
  EXPECT_EQ(ceil_log(2, 1), 0U);
  EXPECT_EQ(ceil_log(2, 2), 1U);
  EXPECT_EQ(ceil_log(2, 5), 3U);
  EXPECT_EQ(ceil_log(3, 9), 2U);
  EXPECT_EQ(ceil_log(3, 10), 3U);
}

PacketBudget tiny_budget() {
  PacketBudget b;
  b.alphabet = 2;
  b.group_len = 1;
  b.columns = 2;
  b.dimension = 1;
  b.entry_width = 3;
  b.gram_width = 2;
  b.gram_count = 1;
  b.total_symbols = 8;
  return b;
}

TEST(Serialize, FixedWidthBigEndianFields) {
  const auto gram = GramTable::of_rows(IntMatrix{{1, 1}});
  const auto s = serialize_packet(IntVector{1, 3}, gram, tiny_budget());
  EXPECT_EQ(symbols_to_hex(s, 2), "00101110");
  const auto back = deserialize_packet(s, tiny_budget());
  EXPECT_EQ(back.codeword, (IntVector{1, 3}));
  EXPECT_EQ(back.gram, gram);
}

TEST(Serialize, TopValueIsAllZeros) {
  const auto gram = GramTable::of_rows(IntMatrix{{1, 1}});
  const auto s = serialize_packet(IntVector{8, 1}, gram, tiny_budget());
  EXPECT_EQ(symbols_to_hex(s, 2), "00000110");
  EXPECT_EQ(deserialize_packet(s, tiny_budget()).codeword, (IntVector{8, 1}));
}

TEST(Serialize, OverflowAtTheWidthBoundary) {
  const auto gram = GramTable::of_rows(IntMatrix{{1, 1}});
  EXPECT_THROW((void)serialize_packet(IntVector{9, 1}, gram, tiny_budget()), SerializationError);
  EXPECT_THROW((void)serialize_packet(IntVector{0, 1}, gram, tiny_budget()), SerializationError);
  EXPECT_THROW((void)serialize_packet(IntVector{-1, 1}, gram, tiny_budget()), SerializationError);
  EXPECT_THROW((void)serialize_packet(IntVector{1, 1}, GramTable(1), tiny_budget()), SerializationError);
  EXPECT_THROW((void)deserialize_packet(SymbolString(7, 0), tiny_budget()), SerializationError);
}

TEST(Serialize, LargestEntriesOfTheBudgetFit) {
  // All-top source: every codeword entry and Gram entry hits its maximum.
  const std::size_t n = 3, t = 1, n0 = 2, k0 = 3;
  const auto a = build_v_matrix(n, t);
  const auto budget = symbol_budget(n, t, 2, k0, n0, a.max_coefficient());
  const auto bundle = encode(pack_source(SymbolString((n - t) * n0 * k0, 0), 2, k0, n0, n, t), a);
  for (const auto& p : bundle.packets()) {
    const auto back = deserialize_packet(serialize_packet(p.codeword, p.gram, budget), budget);
    EXPECT_EQ(back.codeword, p.codeword);
    EXPECT_EQ(back.gram, p.gram);
  }
}

TEST(Hex, WidthFollowsAlphabet) {
  EXPECT_EQ(symbols_to_hex(digits({1, 0, 1}), 2), "101");
  EXPECT_EQ(symbols_to_hex(digits({16, 3}), 17), "1003");
  EXPECT_EQ(symbols_from_hex("1003", 17), digits({16, 3}));
  EXPECT_THROW((void)symbols_from_hex("2", 2), ParameterError);
  EXPECT_THROW((void)symbols_from_hex("g", 16), ParameterError);
  EXPECT_THROW((void)symbols_from_hex("100", 17), ParameterError);
}

}  // namespace
}  // namespace polytope
