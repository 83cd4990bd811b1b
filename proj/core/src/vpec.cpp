#include "polytope/vpec.hpp"

#include "polytope/error.hpp"

#include <string>

namespace polytope {

Distortion erasure_distortion(std::span<const Symbol> source, const Reconstruction& estimate) {
  if (source.size() != estimate.size()) throw ParameterError("erasure_distortion: length mismatch");
  if (source.empty()) throw ParameterError("erasure_distortion: empty source");
  unsigned long erasures = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (!estimate[i]) ++erasures;
    else if (*estimate[i] != source[i]) return Distortion::infinity();
  }
  Rational d(erasures, static_cast<unsigned long>(source.size()));
  d.canonicalize();
  return {false, d};
}

VpecCodeParams make_vpec_params(std::size_t n, std::size_t t, unsigned k, std::size_t k0, std::size_t n0) {
  if (n < 2 * t + 1) throw ParameterError("VPEC requires N >= 2T + 1");
  if (k < 2 || k0 == 0 || n0 == 0) throw ParameterError("VPEC requires K >= 2 and positive K0, N0");
  VpecCodeParams p{n, t, k, k0, n0, build_v_matrix(n, t), {}};
  p.layers.reserve(n);
  for (std::size_t s = 0; s < n; ++s) p.layers.push_back(rotate_generator(p.base, s));
  return p;
}

std::vector<VpecPacket> VpecTransmission::packets() const {
  if (layers.empty()) return {};
  const std::size_t n = layers.front().codewords.rows();
  std::vector<VpecPacket> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& layer : layers) {
      out[i].codewords.push_back(layer.codewords.row_vector(i));
      out[i].grams.push_back(layer.gram);
    }
  }
  return out;
}

VpecTransmission vpec_encode(std::span<const Symbol> source, const VpecCodeParams& params) {
  if (source.size() != params.source_length())
    throw ParameterError("vpec_encode: expected " + std::to_string(params.source_length()) + " symbols, got " +
                         std::to_string(source.size()));
  const std::size_t len = params.layer_symbols();
  VpecTransmission out;
  out.layers.reserve(params.n);
  for (std::size_t s = 0; s < params.n; ++s) {
    auto block = pack_source(source.subspan(s * len, len), params.alphabet, params.group_len, params.columns,
                             params.n, params.t);
    out.layers.push_back(encode(block, params.layers[s]));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> systematic_assignments(const VpecCodeParams& params,
                                                                         std::size_t i) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < params.n; ++s)
    if (auto row = params.layers[s].source_row(i)) out.emplace_back(s, *row);
  return out;
}

VpecDecodeReport vpec_decode(std::span<const VpecPacket> received, const VpecCodeParams& params) {
  const std::size_t n = params.n;
  if (received.size() != n) throw ParameterError("vpec_decode: expected N packets");
  VpecDecodeReport report;
  report.estimate.assign(params.source_length(), std::nullopt);

  SyndromeGraph combined;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<GramTable> copies;
    copies.reserve(n);
    for (const auto& p : received) copies.push_back(s < p.grams.size() ? p.grams[s] : GramTable());
    GramTable extended;
    try {
      extended = majority_gram(copies, params.n - params.t).extended(params.layers[s].rows);
    } catch (const BudgetViolation&) {
      report.gram_majority_failed = true;
      report.graph = SyndromeGraph(n);
      report.trusted = trusted_set(report.graph, params.t);
      return report;
    }
    auto layer_graph = build_syndrome_graph(n, [&](std::size_t i, std::size_t j) {
      if (s >= received[i].codewords.size() || s >= received[j].codewords.size()) return false;
      const auto& yi = received[i].codewords[s];
      const auto& yj = received[j].codewords[s];
      return yi.size() == params.columns && yj.size() == params.columns && dot(yi, yj) == extended.at(i, j);
    });
    combined = s == 0 ? layer_graph : combined.intersect(layer_graph);
  }
  report.graph = combined;
  report.trusted = trusted_set(combined, params.t);

  const Integer top = ipow(Integer(params.alphabet), params.group_len);
  const std::size_t row_symbols = params.columns * params.group_len;
  for (std::size_t i : report.trusted.trusted) {
    for (auto [layer, row] : systematic_assignments(params, i)) {
      const auto& codeword = received[i].codewords[layer];
      bool in_range = true;
      for (const auto& v : codeword) in_range = in_range && v >= 1 && v <= top;
      if (!in_range) continue;
      std::size_t pos = layer * params.layer_symbols() + row * row_symbols;
      for (const auto& v : codeword)
        for (Symbol d : unpack_block(v, params.alphabet, params.group_len)) report.estimate[pos++] = d;
    }
  }
  return report;
}

PacketBudget vpec_budget(const VpecCodeParams& params) {
  return symbol_budget(params.n, params.t, params.alphabet, params.group_len, params.columns,
                       params.base.max_coefficient());
}

RdRow rd_point(std::size_t n, std::size_t t, const Rational& rate) {
  if (t < 1) throw ParameterError("rd_point: requires T >= 1");
  if (n < max_untrusted(t) + 1) throw ParameterError("rd_point: requires N >= F(T) + 1");
  const auto N = static_cast<long>(n);
  const auto T = static_cast<long>(t);
  const long f = static_cast<long>(max_untrusted(t));

  RdRow row;
  row.rate = rate;
  row.feasible = rate >= Rational(1, N - T);
  row.mds_raw = Rational(N - T, T) - Rational((N - T) * (N - 2 * T), T) * rate;
  row.mds_raw.canonicalize();
  if (!row.feasible) {
    row.polytope = Distortion::infinity();
    row.mds = Distortion::infinity();
    return row;
  }
  if (rate >= Rational(1, N - 2 * T)) {
    row.polytope = {false, 0};
  } else {
    Rational d = Rational(f * (N - T), N * T) * (1 - (N - 2 * T) * rate);
    d.canonicalize();
    row.polytope = {false, d};
  }
  Rational clamped = row.mds_raw;
  if (clamped > 1) clamped = 1;
  if (clamped < 0) clamped = 0;
  row.mds = {false, clamped};
  return row;
}

std::vector<RdRow> rd_tables(std::size_t n, std::size_t t, std::span<const Rational> rates) {
  std::vector<RdRow> out;
  out.reserve(rates.size());
  for (const auto& r : rates) out.push_back(rd_point(n, t, r));
  return out;
}

ThreePacketBundle three_packet_encode(const std::array<Symbol, 3>& source) {
  ThreePacketBundle out;
  for (std::size_t p = 0; p < 3; ++p) out[p] = {source[p], source[(p + 1) % 3]};
  return out;
}

Reconstruction three_packet_decode(const ThreePacketBundle& received) {
  // Component c is carried in slot 0 of packet c and slot 1 of packet c-1.
  auto copy_a = [&](std::size_t c) { return received[c][0]; };
  auto copy_b = [&](std::size_t c) { return received[(c + 2) % 3][1]; };
  std::vector<std::size_t> disputed;
  for (std::size_t c = 0; c < 3; ++c)
    if (copy_a(c) != copy_b(c)) disputed.push_back(c);

  Reconstruction out(3);
  if (disputed.size() == 2) {
    // The two disputed components share exactly one packet.
    const std::size_t a = disputed[0];
    const std::size_t b = disputed[1];
    const std::size_t bad = (b == a + 1) ? a : b;  // packet carrying both
    for (std::size_t c = 0; c < 3; ++c) out[c] = (c == bad) ? copy_b(c) : copy_a(c);
    return out;
  }
  if (disputed.size() == 3) return out;
  for (std::size_t c = 0; c < 3; ++c)
    if (copy_a(c) == copy_b(c)) out[c] = copy_a(c);
  return out;
}

}  // namespace polytope
