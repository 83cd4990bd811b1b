#pragma once

// JSON and CSV rendering for the workbench. Integers that fit a signed 64-bit
// word are JSON numbers, larger ones decimal strings; rationals are "p/q"
// strings next to a fixed-precision decimal.

#include "polytope/adversary.hpp"
#include "polytope/dss.hpp"
#include "polytope/genmatrix.hpp"
#include "polytope/gram.hpp"
#include "polytope/integer.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/source_packets.hpp"
#include "polytope/vpec.hpp"
#include "polytope/witness.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polytope::io {

using Json = nlohmann::ordered_json;

/// Fractional digits of every rendered decimal.
inline constexpr unsigned kDecimalDigits = 6;

[[nodiscard]] Json to_json(const Integer& v);
[[nodiscard]] Json to_json(const IntVector& v);
[[nodiscard]] Json to_json(const IntMatrix& m);
[[nodiscard]] Json to_json(const GramTable& g);
[[nodiscard]] Json to_json(const GeneratorMatrix& a);
[[nodiscard]] Json to_json(const SourceBlock& b);
[[nodiscard]] Json to_json(const Packet& p);
[[nodiscard]] Json to_json(const TransmittedBundle& b);
[[nodiscard]] Json to_json(const SyndromeGraph& g);
[[nodiscard]] Json to_json(const TrustedSet& s);
[[nodiscard]] Json to_json(const DecodeReport& r);
[[nodiscard]] Json to_json(const Distortion& d);
[[nodiscard]] Json to_json(const PacketBudget& b);
[[nodiscard]] Json to_json(const UndecodableWitness& w);
[[nodiscard]] Json to_json(const WitnessReport& r);
[[nodiscard]] Json to_json(const DssParams& p);
[[nodiscard]] Json to_json(const DssEvent& e);
[[nodiscard]] Json to_json(const FlowCheck& c);
[[nodiscard]] Json to_json(const ScenarioScript& s);
[[nodiscard]] Json to_json(const ScenarioResult& r);
[[nodiscard]] Json to_json(const CapacityBounds& b);

/// "p/q", or "p" when the denominator is 1.
[[nodiscard]] std::string exact(const Rational& v);
[[nodiscard]] std::string decimal(const Rational& v);
[[nodiscard]] std::string decimal(const Distortion& d);
[[nodiscard]] std::string exact(const Distortion& d);

/// Accepts "p/q", "p" or a terminating decimal such as "0.75".
[[nodiscard]] Rational parse_rational(std::string_view text);

// Readers throw ParameterError naming the offending field.
[[nodiscard]] Integer integer_from_json(const Json& j, std::string_view field);
[[nodiscard]] IntVector int_vector_from_json(const Json& j, std::string_view field);
[[nodiscard]] IntMatrix int_matrix_from_json(const Json& j, std::string_view field);
[[nodiscard]] GramTable gram_from_json(const Json& j, std::string_view field);
/// Rebuilds the V-matrix for (n, t, rotation); rows, when present, must
/// match it.
[[nodiscard]] GeneratorMatrix generator_from_json(const Json& j);
[[nodiscard]] SourceBlock source_block_from_json(const Json& j);
[[nodiscard]] Packet packet_from_json(const Json& j, std::string_view field);
/// Object with "generator" and "packets" (as written by encode, possibly
/// edited).
[[nodiscard]] ReceivedBundle received_from_json(const Json& j);
[[nodiscard]] DssParams dss_params_from_json(const Json& j);
[[nodiscard]] ScenarioScript scenario_from_json(const Json& j);

[[nodiscard]] DssEventKind dss_event_kind_from_string(std::string_view name);

[[nodiscard]] Json read_json_file(const std::string& path);

/// Two-space indented dump with a trailing newline.
[[nodiscard]] std::string dump(const Json& j);

/// Writes to `path`, or to stdout when `path` is empty or "-".
void write_output(const std::string& path, std::string_view text);

}  // namespace polytope::io
