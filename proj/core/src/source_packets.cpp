#include "polytope/source_packets.hpp"

#include "polytope/error.hpp"

#include <string>

namespace polytope {

namespace {

void check_alphabet(unsigned k) {
  if (k < 2) throw ParameterError("alphabet size K must be at least 2");
}

// Fields hold values in {1..K^width}; the all-zero pattern stands for K^width,
// matching the source-group convention.
void append_fixed_width(SymbolString& out, const Integer& value, unsigned k, std::size_t width) {
  if (value < 1) throw SerializationError("value " + value.get_str() + " is not positive");
  const Integer top = ipow(Integer(k), width);
  if (value > top)
    throw SerializationError("value " + value.get_str() + " exceeds K^" + std::to_string(width) +
                             "; alpha_max or N0 inconsistent with the packet budget");
  const std::size_t start = out.size();
  out.resize(start + width);
  Integer rest = value == top ? Integer(0) : value;
  for (std::size_t i = 0; i < width; ++i) {
    Integer digit = rest % k;
    rest /= k;
    out[start + width - 1 - i] = static_cast<Symbol>(digit.get_ui());
  }
}

Integer read_fixed_width(std::span<const Symbol> symbols, std::size_t& pos, unsigned k,
                         std::size_t width) {
  Integer value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    const Symbol s = symbols[pos++];
    if (s >= k) throw SerializationError("symbol outside alphabet");
    value = value * k + s;
  }
  return value == 0 ? ipow(Integer(k), width) : value;
}

std::size_t hex_digits_per_symbol(unsigned k) {
  std::size_t digits = 1;
  for (unsigned long v = k - 1; v >= 16; v /= 16) ++digits;
  return digits;
}

}  // namespace

Integer pack_group(std::span<const Symbol> digits, unsigned k) {
  check_alphabet(k);
  Integer value = 0;
  Integer place = 1;
  for (Symbol d : digits) {
    if (d >= k) throw ParameterError("symbol " + std::to_string(d) + " outside alphabet");
    value += place * d;
    place *= k;
  }
  if (value == 0) return place;  // all-zero group stands for K^K0
  return value;
}

SymbolString unpack_block(const Integer& value, unsigned k, std::size_t k0) {
  check_alphabet(k);
  const Integer top = ipow(Integer(k), k0);
  if (value < 1 || value > top)
    throw ParameterError("unpack_block: value " + value.get_str() + " outside {1..K^K0}");
  SymbolString digits(k0, 0);
  if (value == top) return digits;
  Integer rest = value;
  for (std::size_t i = 0; i < k0; ++i) {
    digits[i] = static_cast<Symbol>(Integer(rest % k).get_ui());
    rest /= k;
  }
  return digits;
}

SourceBlock pack_source(std::span<const Symbol> symbols, unsigned k, std::size_t k0, std::size_t n0,
                        std::size_t n, std::size_t t) {
  check_alphabet(k);
  if (k0 == 0 || n0 == 0) throw ParameterError("pack_source: K0 and N0 must be positive");
  if (t >= n) throw ParameterError("pack_source: need T < N");
  const std::size_t rows = n - t;
  if (symbols.size() != rows * n0 * k0)
    throw ParameterError("pack_source: expected " + std::to_string(rows * n0 * k0) +
                         " symbols, got " + std::to_string(symbols.size()));
  SourceBlock block{k, k0, n0, IntMatrix(rows, n0)};
  for (std::size_t g = 0; g < rows * n0; ++g)
    block.rows(g / n0, g % n0) = pack_group(symbols.subspan(g * k0, k0), k);
  return block;
}

SymbolString unpack_source(const SourceBlock& block) {
  SymbolString out;
  out.reserve(block.rows.rows() * block.columns * block.group_len);
  for (std::size_t r = 0; r < block.rows.rows(); ++r) {
    for (std::size_t c = 0; c < block.rows.cols(); ++c) {
      auto digits = unpack_block(block.rows(r, c), block.alphabet, block.group_len);
      out.insert(out.end(), digits.begin(), digits.end());
    }
  }
  return out;
}

std::size_t ceil_log(unsigned k, const Integer& x) {
  check_alphabet(k);
  if (x < 1) throw ParameterError("ceil_log: argument must be positive");
  std::size_t e = 0;
  Integer p = 1;
  while (p < x) {
    p *= k;
    ++e;
  }
  return e;
}

PacketBudget symbol_budget(std::size_t n, std::size_t t, unsigned k, std::size_t k0, std::size_t n0,
                           const Integer& alpha_max) {
  check_alphabet(k);
  if (k0 == 0 || n0 == 0 || t >= n) throw ParameterError("symbol_budget: invalid parameters");
  if (alpha_max < 1) throw ParameterError("symbol_budget: alpha_max must be positive");
  PacketBudget b;
  b.alphabet = k;
  b.group_len = k0;
  b.columns = n0;
  b.dimension = n - t;
  b.entry_width = k0 + ceil_log(k, alpha_max * static_cast<unsigned long>(b.dimension));
  // ceil(2 K0 + log_K N0) = 2 K0 + ceil(log_K N0) since 2 K0 is an integer.
  b.gram_width = 2 * k0 + ceil_log(k, Integer(static_cast<unsigned long>(n0)));
  b.gram_count = gram_entry_count(b.dimension);
  b.total_symbols = b.entry_width * n0 + b.gram_width * b.gram_count;
  b.rate = Rational(Integer(static_cast<unsigned long>(b.total_symbols)),
                    Integer(static_cast<unsigned long>(k0 * n0 * b.dimension)));
  b.rate.canonicalize();
  return b;
}

SymbolString serialize_packet(std::span<const Integer> codeword, const GramTable& gram,
                              const PacketBudget& budget) {
  if (codeword.size() != budget.columns)
    throw SerializationError("codeword length differs from N0");
  if (gram.size() != budget.dimension) throw SerializationError("gram table size differs from N-T");
  SymbolString out;
  out.reserve(budget.total_symbols);
  for (const auto& v : codeword) append_fixed_width(out, v, budget.alphabet, budget.entry_width);
  for (const auto& v : gram.upper_triangle())
    append_fixed_width(out, v, budget.alphabet, budget.gram_width);
  return out;
}

DeserializedPacket deserialize_packet(std::span<const Symbol> symbols, const PacketBudget& budget) {
  if (symbols.size() != budget.total_symbols)
    throw SerializationError("packet length " + std::to_string(symbols.size()) + " differs from budget " +
                             std::to_string(budget.total_symbols));
  std::size_t pos = 0;
  DeserializedPacket out;
  out.codeword.reserve(budget.columns);
  for (std::size_t i = 0; i < budget.columns; ++i)
    out.codeword.push_back(read_fixed_width(symbols, pos, budget.alphabet, budget.entry_width));
  IntVector gram;
  gram.reserve(budget.gram_count);
  for (std::size_t i = 0; i < budget.gram_count; ++i)
    gram.push_back(read_fixed_width(symbols, pos, budget.alphabet, budget.gram_width));
  out.gram = GramTable::from_upper_triangle(gram, budget.dimension);
  return out;
}

std::string symbols_to_hex(std::span<const Symbol> symbols, unsigned k) {
  check_alphabet(k);
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t width = hex_digits_per_symbol(k);
  std::string out(symbols.size() * width, '0');
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= k) throw ParameterError("symbol outside alphabet");
    unsigned long v = symbols[i];
    for (std::size_t j = 0; j < width; ++j) {
      out[i * width + width - 1 - j] = kDigits[v % 16];
      v /= 16;
    }
  }
  return out;
}

SymbolString symbols_from_hex(std::string_view hex, unsigned k) {
  check_alphabet(k);
  const std::size_t width = hex_digits_per_symbol(k);
  if (hex.size() % width != 0) throw ParameterError("hex string length is not a multiple of the symbol width");
  SymbolString out(hex.size() / width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned long v = 0;
    for (std::size_t j = 0; j < width; ++j) {
      const char c = hex[i * width + j];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw ParameterError(std::string("invalid hex digit '") + c + "'");
      v = v * 16 + static_cast<unsigned long>(d);
    }
    if (v >= k) throw ParameterError("symbol " + std::to_string(v) + " outside alphabet");
    out[i] = static_cast<Symbol>(v);
  }
  return out;
}

}  // namespace polytope
