#include "polytope/adversary.hpp"

#include "polytope/combinations.hpp"

#include <array>
#include <numeric>

namespace polytope {

namespace {

constexpr std::array<AttackStrategy, 6> kStrategies = {
    AttackStrategy::garbage,  AttackStrategy::perturb,     AttackStrategy::permute_columns,
    AttackStrategy::collude,  AttackStrategy::gram_tamper, AttackStrategy::mixed,
};

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Column map applied to a codeword: out[c] = sign[c] * in[source[c]].
struct ColumnMap {
  std::vector<std::size_t> source;
  std::vector<int> sign;

  [[nodiscard]] IntVector apply(const IntVector& y) const {
    IntVector out(y.size());
    for (std::size_t c = 0; c < y.size(); ++c) out[c] = sign[c] * y[source[c]];
    return out;
  }
};

ColumnMap random_permutation(std::size_t n, std::mt19937_64& rng, bool with_signs) {
  ColumnMap m{std::vector<std::size_t>(n), std::vector<int>(n, 1)};
  std::iota(m.source.begin(), m.source.end(), std::size_t{0});
  std::shuffle(m.source.begin(), m.source.end(), rng);
  if (with_signs)
    for (auto& s : m.sign) s = uniform(rng, 0, 1) == 0 ? 1 : -1;
  return m;
}

ColumnMap random_transposition(std::size_t n, std::mt19937_64& rng) {
  ColumnMap m{std::vector<std::size_t>(n), std::vector<int>(n, 1)};
  std::iota(m.source.begin(), m.source.end(), std::size_t{0});
  if (n >= 2) {
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (b >= a) ++b;
    std::swap(m.source[a], m.source[b]);
  }
  return m;
}

ColumnMap collusion_map(std::size_t n, std::mt19937_64& rng) {
  return uniform(rng, 0, 1) == 0 ? random_permutation(n, rng, true) : random_transposition(n, rng);
}

IntVector garbage(const IntVector& y, std::mt19937_64& rng, long box) {
  Integer bound = box;
  for (const auto& v : y) bound = std::max(bound, Integer(abs(v) + box));
  if (!bound.fits_slong_p()) bound = box;
  const long b = bound.get_si();
  IntVector out(y.size());
  for (auto& v : out) v = uniform(rng, -b, b);
  return out;
}

IntVector perturb(const IntVector& y, std::mt19937_64& rng, long box) {
  IntVector out = y;
  for (auto& v : out) v += uniform(rng, -box, box);
  return out;
}

GramTable tamper(const GramTable& g, std::mt19937_64& rng, long box) {
  GramTable out = g;
  if (g.size() == 0) return out;
  const auto last = static_cast<long>(g.size()) - 1;
  auto i = static_cast<std::size_t>(uniform(rng, 0, last));
  auto j = static_cast<std::size_t>(uniform(rng, 0, last));
  if (i > j) std::swap(i, j);
  const long b = std::max(box, 1L);
  long delta = uniform(rng, -b, b - 1);
  if (delta >= 0) ++delta;
  out.set(i, j, g.at(i, j) + delta);
  return out;
}

AttackStrategy concrete(AttackStrategy s, std::mt19937_64& rng) {
  if (s != AttackStrategy::mixed) return s;
  return kStrategies[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(kStrategies.size()) - 2))];
}

// Codeword replacement for one packet (one layer). `shared` is the common
// column map used by colluding packets.
IntVector mutate(const IntVector& y, AttackStrategy s, const ColumnMap& shared, std::mt19937_64& rng, long box) {
  switch (s) {
    case AttackStrategy::garbage: return garbage(y, rng, box);
    case AttackStrategy::perturb: return perturb(y, rng, box);
    case AttackStrategy::permute_columns: return random_permutation(y.size(), rng, false).apply(y);
    case AttackStrategy::collude: return shared.apply(y);
    case AttackStrategy::gram_tamper:
    case AttackStrategy::mixed: return y;
  }
  return y;
}

std::vector<std::size_t> draw_altered(std::size_t n, std::size_t t, std::mt19937_64& rng) {
  const auto count = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(std::min(t, n))));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool worse(const Distortion& a, const Distortion& b) {
  if (a.infinite) return !b.infinite;
  return !b.infinite && a.value > b.value;
}

}  // namespace

ReceivedBundle apply_attack(const TransmittedBundle& bundle, const AttackPlan& plan, std::size_t t) {
  return {apply_attack(bundle.packets(), plan, t)};
}

std::vector<VpecPacket> apply_attack(const VpecTransmission& sent, const VpecAttackPlan& plan, std::size_t t) {
  return apply_attack(sent.packets(), plan, t);
}

std::string_view to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::garbage: return "garbage";
    case AttackStrategy::perturb: return "perturb";
    case AttackStrategy::permute_columns: return "permute_columns";
    case AttackStrategy::collude: return "collude";
    case AttackStrategy::gram_tamper: return "gram_tamper";
    case AttackStrategy::mixed: return "mixed";
  }
  return "unknown";
}

AttackStrategy attack_strategy_from_string(std::string_view name) {
  for (auto s : kStrategies)
    if (to_string(s) == name) return s;
  throw ParameterError("unknown attack strategy '" + std::string(name) + "'");
}

std::span<const AttackStrategy> all_attack_strategies() { return kStrategies; }

AttackPlan random_attack(const TransmittedBundle& bundle, std::size_t t, AttackStrategy strategy,
                         std::mt19937_64& rng, long box) {
  const std::size_t n = bundle.codewords.rows();
  AttackPlan plan;
  plan.altered = draw_altered(n, t, rng);
  const ColumnMap shared = collusion_map(bundle.codewords.cols(), rng);
  for (std::size_t i : plan.altered) {
    const AttackStrategy s = concrete(strategy, rng);
    Packet p{bundle.codewords.row_vector(i), bundle.gram};
    p.codeword = mutate(p.codeword, s, shared, rng, box);
    if (s == AttackStrategy::gram_tamper || (strategy == AttackStrategy::mixed && uniform(rng, 0, 1) == 0))
      p.gram = tamper(p.gram, rng, box);
    plan.replacements.push_back(std::move(p));
  }
  return plan;
}

VpecAttackPlan random_attack(const VpecTransmission& sent, std::size_t t, AttackStrategy strategy,
                             std::mt19937_64& rng, long box) {
  const auto honest = sent.packets();
  VpecAttackPlan plan;
  plan.altered = draw_altered(honest.size(), t, rng);
  std::vector<ColumnMap> shared;
  for (const auto& layer : sent.layers) shared.push_back(collusion_map(layer.codewords.cols(), rng));
  for (std::size_t i : plan.altered) {
    const AttackStrategy s = concrete(strategy, rng);
    VpecPacket p = honest[i];
    for (std::size_t layer = 0; layer < p.codewords.size(); ++layer) {
      p.codewords[layer] = mutate(p.codewords[layer], s, shared[layer], rng, box);
      if (s == AttackStrategy::gram_tamper || (strategy == AttackStrategy::mixed && uniform(rng, 0, 1) == 0))
        p.grams[layer] = tamper(p.grams[layer], rng, box);
    }
    plan.replacements.push_back(std::move(p));
  }
  return plan;
}

AttackSearchResult search_worst_attack(const VpecCodeParams& params, std::span<const Symbol> source,
                                       const AttackSearchOptions& options) {
  const auto sent = vpec_encode(source, params);
  const auto honest = sent.packets();
  const std::size_t budget = std::min(options.budget, params.n);

  AttackSearchResult result;
  result.worst = {false, 0};
  auto consider = [&](const VpecAttackPlan& plan) {
    const auto received = apply_attack(honest, plan, options.budget);
    const auto d = erasure_distortion(source, vpec_decode(received, params).estimate);
    if (result.evaluated == 0 || worse(d, result.worst)) {
      result.worst = d;
      result.plan = plan;
    }
    ++result.evaluated;
  };

  if (!options.exhaustive) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.samples; ++s) {
      const auto strategy = kStrategies[static_cast<std::size_t>(uniform(rng, 0, kStrategies.size() - 1))];
      consider(random_attack(sent, options.budget, strategy, rng, options.box));
    }
    return result;
  }

  if (budget == 0) {
    consider({});
    return result;
  }
  const std::size_t entries = budget * params.n * params.columns;
  const auto width = static_cast<std::size_t>(2 * options.box + 1);
  std::size_t per_subset = 1;
  for (std::size_t e = 0; e < entries; ++e) {
    if (per_subset > options.max_evaluations / width)
      throw ParameterError("search_worst_attack: box too large for exhaustive search");
    per_subset *= width;
  }
  if (binomial(params.n, budget) > options.max_evaluations / per_subset)
    throw ParameterError("search_worst_attack: box too large for exhaustive search");

  for_each_combination(params.n, budget, [&](std::span<const std::size_t> subset) {
    std::vector<long> offset(entries, -options.box);
    while (true) {
      VpecAttackPlan plan;
      std::size_t e = 0;
      for (std::size_t i : subset) {
        VpecPacket p = honest[i];
        for (auto& cw : p.codewords)
          for (auto& v : cw) v += offset[e++];
        plan.altered.push_back(i);
        plan.replacements.push_back(std::move(p));
      }
      consider(plan);
      std::size_t k = 0;
      while (k < entries && offset[k] == options.box) offset[k++] = -options.box;
      if (k == entries) break;
      ++offset[k];
    }
    return true;
  });
  return result;
}

IntMatrix sylvester_hadamard(std::size_t order) {
  if (order == 0 || (order & (order - 1)) != 0) throw ParameterError("Sylvester Hadamard order must be a power of two");
  IntMatrix h(order, order);
  h(0, 0) = 1;
  for (std::size_t size = 1; size < order; size *= 2)
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) {
        h(r, c + size) = h(r, c);
        h(r + size, c) = h(r, c);
        h(r + size, c + size) = -h(r, c);
      }
  return h;
}

}  // namespace polytope
