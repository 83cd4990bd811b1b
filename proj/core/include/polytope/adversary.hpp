#pragma once

// Attack plans against single-layer and layered bundles, randomized attack
// strategies, and worst-case distortion search over a perturbation box.

#include "polytope/error.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/vpec.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polytope {

/// Packets in `altered` are replaced verbatim by the matching entry of
/// `replacements`; everything else is delivered unchanged.
template <typename P>
struct BasicAttackPlan {
  std::vector<std::size_t> altered;
  std::vector<P> replacements;

  friend bool operator==(const BasicAttackPlan&, const BasicAttackPlan&) = default;
};

using AttackPlan = BasicAttackPlan<Packet>;
using VpecAttackPlan = BasicAttackPlan<VpecPacket>;

/// Throws ParameterError if the plan alters more than `t` packets, names an
/// index twice or out of range, or has mismatched replacement count.
template <typename P>
[[nodiscard]] std::vector<P> apply_attack(std::vector<P> packets, const BasicAttackPlan<P>& plan, std::size_t t) {
  if (plan.altered.size() != plan.replacements.size())
    throw ParameterError("attack plan: altered set and replacements differ in size");
  if (plan.altered.size() > t)
    throw ParameterError("attack plan alters " + std::to_string(plan.altered.size()) + " packets, budget is " +
                         std::to_string(t));
  std::vector<std::size_t> seen = plan.altered;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw ParameterError("attack plan names a packet twice");
  if (!seen.empty() && seen.back() >= packets.size()) throw ParameterError("attack plan index out of range");
  for (std::size_t k = 0; k < plan.altered.size(); ++k) packets[plan.altered[k]] = plan.replacements[k];
  return packets;
}

[[nodiscard]] ReceivedBundle apply_attack(const TransmittedBundle& bundle, const AttackPlan& plan, std::size_t t);
[[nodiscard]] std::vector<VpecPacket> apply_attack(const VpecTransmission& sent, const VpecAttackPlan& plan,
                                                   std::size_t t);

enum class AttackStrategy {
  garbage,          // uniform entries around the true magnitude
  perturb,          // true codeword plus a small box offset
  permute_columns,  // independent column shuffle per packet: self-norm kept
  collude,          // one shared signed permutation or transposition: Gram-consistent forgery
  gram_tamper,      // honest codeword, altered Gram copy
  mixed,            // per-packet random pick of the above
};

[[nodiscard]] std::string_view to_string(AttackStrategy s);
/// Throws ParameterError on an unknown name.
[[nodiscard]] AttackStrategy attack_strategy_from_string(std::string_view name);
[[nodiscard]] std::span<const AttackStrategy> all_attack_strategies();

/// Alters a uniformly drawn number (0..t) of uniformly drawn packets.
[[nodiscard]] AttackPlan random_attack(const TransmittedBundle& bundle, std::size_t t, AttackStrategy strategy,
                                       std::mt19937_64& rng, long box = 2);
[[nodiscard]] VpecAttackPlan random_attack(const VpecTransmission& sent, std::size_t t, AttackStrategy strategy,
                                           std::mt19937_64& rng, long box = 2);

struct AttackSearchOptions {
  std::size_t budget = 1;   // T
  long box = 1;             // every codeword entry offset in [-box, box]
  bool exhaustive = true;   // otherwise `samples` random plans from `seed`
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t max_evaluations = 2'000'000;
};

struct AttackSearchResult {
  VpecAttackPlan plan;  // first plan reaching `worst`
  Distortion worst;
  std::size_t evaluated = 0;
};

/// Maximises the measured layered-decoder distortion. The exhaustive mode
/// enumerates every set of min(budget, N) packets and every box offset of
/// their codeword entries (zero offsets cover smaller sets). Throws
/// ParameterError if that space exceeds `max_evaluations`.
[[nodiscard]] AttackSearchResult search_worst_attack(const VpecCodeParams& params, std::span<const Symbol> source,
                                                     const AttackSearchOptions& options);

/// L x L Sylvester Hadamard matrix; L must be a power of two.
[[nodiscard]] IntMatrix sylvester_hadamard(std::size_t order);

}  // namespace polytope
