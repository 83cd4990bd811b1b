#include "polytope/dss.hpp"

#include "polytope/combinations.hpp"
#include "polytope/error.hpp"
#include "polytope/genmatrix.hpp"
#include "polytope/source_packets.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <numeric>

namespace polytope {

namespace {

constexpr std::array<DssAttack, 7> kAttacks = {
    DssAttack::garbage,         DssAttack::replay,      DssAttack::forge_coefficients, DssAttack::lie_coefficients,
    DssAttack::permute_columns, DssAttack::gram_tamper, DssAttack::mixed,
};

constexpr std::uint64_t kTransferTag = 1;
constexpr std::uint64_t kCombineTag = 2;
constexpr std::uint64_t kAdversaryTag = 3;

std::mt19937_64 keyed_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> head,
                             std::span<const std::size_t> tail = {}) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto v : head) push(v);
  for (auto v : tail) push(v);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

IntMatrix uniform_matrix(std::size_t rows, std::size_t cols, unsigned long q, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned long> dist(1, q);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (auto& v : m.row(r)) v = dist(rng);
  return m;
}

IntMatrix rows_of(const IntMatrix& m, std::size_t first, std::size_t count) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), first);
  return m.select_rows(idx);
}

IntMatrix stack(const std::vector<IntMatrix>& blocks, std::size_t cols) {
  IntMatrix out(0, cols);
  for (const auto& b : blocks) out = vstack(out, b);
  return out;
}

std::size_t untrusted_allowance(std::size_t t) { return t == 0 ? 0 : max_untrusted(t); }

std::vector<std::size_t> sample(std::vector<std::size_t> pool, std::size_t count, std::mt19937_64& rng) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

void validate(const DssParams& p) {
  auto fail = [](const std::string& what) { throw ParameterError("DSS parameters: " + what); };
  if (p.alpha == 0 || p.beta == 0) fail("alpha and beta must be positive");
  if (p.beta > p.alpha) fail("requires beta <= alpha");
  if (p.k > p.d) fail("requires k <= d");
  if (p.n == 0 || p.d + 1 > p.n) fail("requires d <= N - 1 so a repair can reach d helpers");
  if (p.k < 2 * p.t + 1) fail("requires k >= 2T + 1 for majority recovery of F at a data collector");
  if (p.d < 2 * p.t + 1) fail("requires d >= 2T + 1 for majority recovery of F at a repair");
  if (p.t >= 1 && p.k <= max_untrusted(p.t)) fail("requires k - F(T) > 0");
  if (p.lifetime < p.n) fail("lifetime L must be at least N");
  if (p.rows == 0) fail("file rows r must be positive");
  if (p.alpha * p.n < p.rows) fail("requires alpha N >= r");
  if (p.alphabet < 2 || p.group_len == 0 || p.columns == 0) fail("requires K >= 2 and positive K0, N0");
  if (p.q && *p.q == 0) fail("q must be positive");
  const auto bounds = dss_capacity_bounds(p.k, p.d, p.t, static_cast<long>(p.alpha), static_cast<long>(p.beta));
  if (Rational(static_cast<long>(p.rows)) > bounds.lower)
    fail("r = " + std::to_string(p.rows) + " exceeds the achievable bound " + bounds.lower.get_str());
}

Rational cutset_sum(long k, long d, const Rational& alpha, const Rational& beta) {
  Rational total = 0;
  for (long i = 0; i < k; ++i) {
    const Rational link = (d - i) * beta;
    total += link < alpha ? link : alpha;
  }
  return total;
}

CapacityBounds dss_capacity_bounds(std::size_t k, std::size_t d, std::size_t t, const Rational& alpha,
                                   const Rational& beta) {
  if (k > d) throw ParameterError("capacity bounds: requires k <= d");
  if (k < 2 * t + 1) throw ParameterError("capacity bounds: requires k >= 2T + 1");
  if (t >= 1 && k <= max_untrusted(t)) throw ParameterError("capacity bounds: requires k - F(T) > 0");
  const auto K = static_cast<long>(k);
  const auto D = static_cast<long>(d);
  const auto T = static_cast<long>(t);
  CapacityBounds b;
  b.upper = cutset_sum(K - 2 * T, D - 2 * T, alpha, beta);
  if (t == 0) {
    b.lower = b.upper;
  } else {
    const auto F = static_cast<long>(max_untrusted(t));
    const Rational first = cutset_sum(K - F, D - F, alpha, beta);
    const Rational second = (D - T) * beta;
    b.lower = first < second ? first : second;
  }
  b.msr_alpha = (D - K + 1) * beta;
  b.msr_capacity = (K - 2 * T) * b.msr_alpha;
  b.mbr_alpha = (D - 2 * T) * beta;
  const long kk = K - 2 * T;
  b.mbr_capacity = (kk * (D - 2 * T) - kk * (kk - 1) / 2) * beta;
  return b;
}

Rational repair_cut_bound(std::size_t d, std::size_t t, const Rational& alpha, const Rational& beta) {
  const auto D = static_cast<long>(d);
  const auto T = static_cast<long>(t);
  const long reach = std::max(0L, D - static_cast<long>(untrusted_allowance(t)));
  std::optional<Rational> best;
  for (long z = 0; z <= D; ++z) {
    Rational value = cutset_sum(std::min(z, reach), reach, alpha, beta) + std::max(D - T - z, 0L) * beta;
    if (!best || value < *best) best = value;
  }
  return *best;
}

std::string_view to_string(DssAttack a) {
  switch (a) {
    case DssAttack::garbage: return "garbage";
    case DssAttack::replay: return "replay";
    case DssAttack::forge_coefficients: return "forge_coefficients";
    case DssAttack::lie_coefficients: return "lie_coefficients";
    case DssAttack::permute_columns: return "permute_columns";
    case DssAttack::gram_tamper: return "gram_tamper";
    case DssAttack::mixed: return "mixed";
  }
  return "unknown";
}

DssAttack dss_attack_from_string(std::string_view name) {
  for (auto a : kAttacks)
    if (to_string(a) == name) return a;
  throw ParameterError("unknown DSS attack '" + std::string(name) + "'");
}

std::span<const DssAttack> all_dss_attacks() { return kAttacks; }

std::string_view to_string(DssEventKind k) {
  switch (k) {
    case DssEventKind::init: return "init";
    case DssEventKind::fail: return "fail";
    case DssEventKind::repair: return "repair";
    case DssEventKind::adversary: return "adversary";
    case DssEventKind::dc_read: return "dc_read";
  }
  return "unknown";
}

IntMatrix default_storage_matrix(const DssParams& p) {
  return build_v_matrix(p.alpha * p.n, p.alpha * p.n - p.rows).rows;
}

unsigned long calibrate_q(const DssParams& p, const IntMatrix& storage, std::uint64_t seed, std::size_t trials) {
  validate(p);
  const Integer largest = std::max(storage.max_entry(), Integer(2));
  unsigned long q = 1;
  while (q < largest) q *= 2;
  const std::size_t f = untrusted_allowance(p.t);
  std::vector<std::size_t> initial(p.n);
  std::iota(initial.begin(), initial.end(), std::size_t{0});
  // Node N-1 fails and is rebuilt from the survivors.
  const std::vector<std::size_t> survivors(initial.begin(), initial.end() - 1);

  for (; q < (1UL << 40); q *= 2) {
    auto rng = keyed_stream(seed, {q});
    bool ok = true;
    for (std::size_t trial = 0; trial < trials && ok; ++trial) {
      const auto helpers = sample(survivors, p.d, rng);
      std::vector<IntMatrix> incoming;
      for (std::size_t h : helpers)
        incoming.push_back(multiply(uniform_matrix(p.beta, p.alpha, q, rng), rows_of(storage, h * p.alpha, p.alpha)));
      std::vector<std::size_t> order(p.d);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::vector<IntMatrix> honest;
      for (std::size_t i : sample(order, p.d - p.t, rng)) honest.push_back(incoming[i]);
      if (rank(stack(honest, p.rows)) < p.rows) ok = false;

      std::vector<IntMatrix> trusted;
      for (std::size_t i : sample(order, p.d - f, rng)) trusted.push_back(incoming[i]);
      const IntMatrix fresh =
          multiply(uniform_matrix(p.alpha, (p.d - f) * p.beta, q, rng), stack(trusted, p.rows));

      auto read = sample(initial, p.k - f, rng);
      std::vector<IntMatrix> blocks;
      for (std::size_t i : read)
        blocks.push_back(i + 1 == p.n ? fresh : rows_of(storage, i * p.alpha, p.alpha));
      if (rank(stack(blocks, p.rows)) < p.rows) ok = false;
    }
    if (ok) return q;
  }
  throw ProtocolError("calibrate_q: no q up to 2^40 passes the rank trials");
}

IntMatrix random_file(const DssParams& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> digit(0, p.alphabet - 1);
  IntMatrix f(p.rows, p.columns);
  SymbolString group(p.group_len);
  for (std::size_t r = 0; r < p.rows; ++r)
    for (auto& v : f.row(r)) {
      for (auto& s : group) s = digit(rng);
      v = pack_group(group, p.alphabet);
    }
  return f;
}

DssSystem::DssSystem(IntMatrix file, DssParams params, std::uint64_t seed, std::optional<IntMatrix> storage)
    : params_(std::move(params)), file_(std::move(file)), seed_(seed),
      adversary_rng_(keyed_stream(seed, {kAdversaryTag})) {
  validate(params_);
  const auto& p = params_;
  if (file_.rows() != p.rows || file_.cols() != p.columns)
    throw ParameterError("DSS file must be r x N0");
  const Integer top = ipow(Integer(p.alphabet), p.group_len);
  for (std::size_t r = 0; r < file_.rows(); ++r)
    for (const auto& v : file_.row(r))
      if (v < 1 || v > top) throw ParameterError("DSS file entries must lie in {1..K^K0}");

  storage_ = storage ? std::move(*storage) : default_storage_matrix(p);
  if (storage_.rows() != p.alpha * p.n || storage_.cols() != p.rows)
    throw ParameterError("storage matrix must be alpha N x r");
  if (!all_submatrices_nonsingular(storage_, p.rows))
    throw ParameterError("storage matrix has a singular r x r row-submatrix");
  q_ = p.q ? *p.q : calibrate_q(p, storage_, seed);

  gram_ = GramTable::of_rows(file_);
  DssEvent init;
  init.kind = DssEventKind::init;
  for (std::size_t i = 0; i < p.n; ++i) {
    IntMatrix a = rows_of(storage_, i * p.alpha, p.alpha);
    stored_.push_back({multiply(a, file_), gram_, a});
    alive_.push_back(true);
    init.nodes.push_back(i);
  }
  history_.push_back(std::move(init));
}

std::vector<std::size_t> DssSystem::alive() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < alive_.size(); ++i)
    if (alive_[i]) out.push_back(i);
  return out;
}

bool DssSystem::is_alive(std::size_t node) const { return node < alive_.size() && alive_[node]; }

bool DssSystem::is_adversary(std::size_t node) const {
  return std::find(adversaries_.begin(), adversaries_.end(), node) != adversaries_.end();
}

const NodePacket& DssSystem::stored(std::size_t node) const {
  if (node >= stored_.size()) throw ParameterError("unknown node " + std::to_string(node));
  return stored_[node];
}

IntMatrix DssSystem::transfer_coefficients(std::size_t from, std::size_t to) const {
  auto rng = keyed_stream(seed_, {kTransferTag, from, to});
  return uniform_matrix(params_.beta, params_.alpha, q_, rng);
}

IntMatrix DssSystem::combine_coefficients(std::size_t node, std::span<const std::size_t> trusted) const {
  auto rng = keyed_stream(seed_, {kCombineTag, node, trusted.size()}, trusted);
  return uniform_matrix(params_.alpha, trusted.size() * params_.beta, q_, rng);
}

void DssSystem::check_nodes(std::span<const std::size_t> nodes, std::size_t expected, const char* what) const {
  if (nodes.size() != expected)
    throw ParameterError(std::string(what) + ": expected " + std::to_string(expected) + " nodes, got " +
                         std::to_string(nodes.size()));
  std::vector<std::size_t> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError(std::string(what) + ": node listed twice");
  for (std::size_t v : nodes)
    if (!is_alive(v)) throw ParameterError(std::string(what) + ": node " + std::to_string(v) + " is not alive");
}

void DssSystem::fail(std::size_t node) {
  if (!is_alive(node)) throw ParameterError("fail: node " + std::to_string(node) + " is not alive");
  alive_[node] = false;
  std::erase(adversaries_, node);
  DssEvent e;
  e.kind = DssEventKind::fail;
  e.node = node;
  e.adversaries = adversaries_;
  history_.push_back(std::move(e));
}

void DssSystem::set_adversaries(std::vector<std::size_t> nodes, DssAttack strategy) {
  if (nodes.size() > params_.t)
    throw ParameterError("adversary set of " + std::to_string(nodes.size()) + " exceeds T = " +
                         std::to_string(params_.t));
  check_nodes(nodes, nodes.size(), "set_adversaries");
  std::sort(nodes.begin(), nodes.end());
  adversaries_ = nodes;
  strategy_ = strategy;
  DssEvent e;
  e.kind = DssEventKind::adversary;
  e.nodes = nodes;
  e.adversaries = nodes;
  e.detail = std::string(to_string(strategy));
  history_.push_back(std::move(e));
}

NodePacket DssSystem::transmit(std::size_t from, const IntMatrix& b) {
  const NodePacket& s = stored_[from];
  NodePacket honest{multiply(b, s.data), s.gram, multiply(b, s.coefficients)};
  if (!is_adversary(from)) return honest;

  auto& rng = adversary_rng_;
  DssAttack a = strategy_;
  if (a == DssAttack::mixed)
    a = kAttacks[std::uniform_int_distribution<std::size_t>(0, kAttacks.size() - 2)(rng)];
  switch (a) {
    case DssAttack::garbage: {
      Integer bound = honest.data.max_entry() + 1;
      if (!bound.fits_ulong_p()) bound = q_;
      std::uniform_int_distribution<unsigned long> dist(1, bound.get_ui());
      for (std::size_t r = 0; r < honest.data.rows(); ++r)
        for (auto& v : honest.data.row(r)) v = dist(rng);
      return honest;
    }
    case DssAttack::replay: return honest;
    case DssAttack::forge_coefficients: {
      const IntMatrix forged = uniform_matrix(b.rows(), b.cols(), q_, rng);
      return {multiply(forged, s.data), s.gram, multiply(forged, s.coefficients)};
    }
    case DssAttack::lie_coefficients: {
      std::uniform_int_distribution<std::size_t> row(0, honest.coefficients.rows() - 1);
      std::uniform_int_distribution<std::size_t> col(0, honest.coefficients.cols() - 1);
      honest.coefficients(row(rng), col(rng)) += 1;
      return honest;
    }
    case DssAttack::permute_columns: {
      std::vector<std::size_t> perm(honest.data.cols());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      IntMatrix shuffled(honest.data.rows(), honest.data.cols());
      for (std::size_t r = 0; r < shuffled.rows(); ++r)
        for (std::size_t c = 0; c < shuffled.cols(); ++c) shuffled(r, c) = honest.data(r, perm[c]);
      honest.data = std::move(shuffled);
      return honest;
    }
    case DssAttack::gram_tamper: {
      std::uniform_int_distribution<std::size_t> idx(0, honest.gram.size() - 1);
      std::size_t i = idx(rng);
      std::size_t j = idx(rng);
      honest.gram.set(i, j, honest.gram.at(i, j) + 1);
      return honest;
    }
    case DssAttack::mixed: break;
  }
  return honest;
}

GramTable DssSystem::majority(std::span<const NodePacket> packets) const {
  std::vector<GramTable> copies;
  copies.reserve(packets.size());
  for (const auto& p : packets) copies.push_back(p.gram);
  return majority_gram(copies, params_.rows);
}

SyndromeGraph DssSystem::syndrome_graph(std::span<const NodePacket> packets, const GramTable& f) const {
  return build_syndrome_graph(packets.size(), [&](std::size_t a, std::size_t b) {
    const NodePacket& pa = packets[a];
    const NodePacket& pb = packets[b];
    const std::size_t cols = params_.columns;
    if (pa.data.cols() != cols || pb.data.cols() != cols) return false;
    if (pa.coefficients.cols() != params_.rows || pb.coefficients.cols() != params_.rows) return false;
    if (pa.coefficients.rows() != pa.data.rows() || pb.coefficients.rows() != pb.data.rows()) return false;
    return multiply_transposed(pa.data, pb.data) ==
           multiply_transposed(multiply(pa.coefficients, f.matrix()), pb.coefficients);
  });
}

std::size_t DssSystem::repair(std::span<const std::size_t> helpers) {
  const auto& p = params_;
  if (alive().size() >= p.n) throw ParameterError("repair: all N nodes are alive; fail one first");
  if (stored_.size() >= p.lifetime) throw ParameterError("repair: lifetime node limit L reached");
  check_nodes(helpers, p.d, "repair");
  const std::size_t j = stored_.size();

  std::vector<NodePacket> incoming;
  std::vector<IntMatrix> honest;
  for (std::size_t h : helpers) {
    const IntMatrix b = transfer_coefficients(h, j);
    incoming.push_back(transmit(h, b));
    if (!is_adversary(h)) honest.push_back(multiply(b, stored_[h].coefficients));
  }

  DssEvent e;
  e.kind = DssEventKind::repair;
  e.node = j;
  e.nodes.assign(helpers.begin(), helpers.end());
  e.adversaries = adversaries_;
  const GramTable f = majority(incoming);
  const TrustedSet ts = trusted_set(syndrome_graph(incoming, f), p.t);
  for (std::size_t v : ts.trusted) e.trusted.push_back(helpers[v]);
  e.rank = rank(stack(honest, p.rows));

  const std::size_t need = p.d - std::min(p.d, untrusted_allowance(p.t));
  if (ts.trusted.size() < need)
    throw ProtocolError("repair of node " + std::to_string(j) + ": only " + std::to_string(ts.trusted.size()) +
                        " trusted helpers, need " + std::to_string(need));
  if (e.rank < p.rows)
    throw ProtocolError("repair of node " + std::to_string(j) + ": honest helper coefficients have rank " +
                        std::to_string(e.rank) + " < r");

  std::vector<IntMatrix> data;
  std::vector<IntMatrix> coeffs;
  for (std::size_t v : ts.trusted) {
    data.push_back(incoming[v].data);
    coeffs.push_back(incoming[v].coefficients);
  }
  const IntMatrix c = combine_coefficients(j, e.trusted);
  NodePacket fresh{multiply(c, stack(data, p.columns)), f, multiply(c, stack(coeffs, p.rows))};

  // Coefficient-growth bound (q^2 alpha beta d)^(j-N+1) q with q covering the storage matrix.
  const Integer qe = std::max(Integer(q_), storage_.max_entry());
  const Integer bound = ipow(qe * qe * static_cast<unsigned long>(p.alpha * p.beta * p.d), j + 1 - p.n) * qe;
  for (std::size_t r = 0; r < fresh.coefficients.rows(); ++r)
    for (const auto& v : fresh.coefficients.row(r))
      if (abs(v) > bound)
        throw SerializationError("repair of node " + std::to_string(j) + ": coefficient exceeds growth bound");

  stored_.push_back(std::move(fresh));
  alive_.push_back(true);
  history_.push_back(std::move(e));
  return j;
}

IntMatrix DssSystem::dc_read(std::span<const std::size_t> nodes) {
  const auto& p = params_;
  check_nodes(nodes, p.k, "dc_read");
  std::vector<NodePacket> packets;
  for (std::size_t v : nodes) packets.push_back(transmit(v, IntMatrix::identity(p.alpha)));

  DssEvent e;
  e.kind = DssEventKind::dc_read;
  e.nodes.assign(nodes.begin(), nodes.end());
  e.adversaries = adversaries_;
  auto fail = [&](const std::string& why) -> IntMatrix {
    e.success = false;
    e.detail = why;
    history_.push_back(e);
    throw DecodeError(why);
  };

  GramTable f;
  try {
    f = majority(packets);
  } catch (const BudgetViolation& err) {
    return fail(err.what());
  }
  const TrustedSet ts = trusted_set(syndrome_graph(packets, f), p.t);
  for (std::size_t v : ts.trusted) e.trusted.push_back(nodes[v]);
  std::vector<IntMatrix> data;
  std::vector<IntMatrix> coeffs;
  for (std::size_t v : ts.trusted) {
    data.push_back(packets[v].data);
    coeffs.push_back(packets[v].coefficients);
  }
  const IntMatrix a_hat = stack(coeffs, p.rows);
  e.rank = rank(a_hat);

  const std::size_t need = p.k - std::min(p.k, untrusted_allowance(p.t));
  if (ts.trusted.size() < need)
    return fail("only " + std::to_string(ts.trusted.size()) + " trusted nodes, need " + std::to_string(need));
  if (e.rank < p.rows) return fail("trusted coefficients have rank " + std::to_string(e.rank) + " < r");
  const LinearSolution sol = solve_exact(a_hat, stack(data, p.columns));
  if (sol.status != LinearSolution::Status::unique) return fail("trusted data is inconsistent with its coefficients");

  IntMatrix out(p.rows, p.columns);
  for (std::size_t r = 0; r < p.rows; ++r)
    for (std::size_t c = 0; c < p.columns; ++c) {
      if (sol.x[r][c].get_den() != 1) return fail("decoded file has a non-integer entry");
      out(r, c) = sol.x[r][c].get_num();
    }
  history_.push_back(std::move(e));
  return out;
}

bool DssSystem::honest_data_invariant() const {
  for (std::size_t i = 0; i < stored_.size(); ++i) {
    if (!alive_[i] || is_adversary(i)) continue;
    if (multiply(stored_[i].coefficients, file_) != stored_[i].data) return false;
  }
  return true;
}

ScenarioScript roaming_adversary_script(const DssParams& p, std::size_t repairs, std::uint64_t seed,
                                        DssAttack strategy) {
  validate(p);
  if (p.n + repairs > p.lifetime) throw ParameterError("scenario: more repairs than the lifetime allows");
  auto rng = keyed_stream(seed, {0x5c});
  std::vector<std::size_t> alive(p.n);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  std::size_t next = p.n;
  ScenarioScript s;
  for (std::size_t round = 0; round < repairs; ++round) {
    s.events.push_back({DssEventKind::adversary, 0, sample(alive, p.t, rng), strategy});
    s.events.push_back({DssEventKind::dc_read, 0, sample(alive, p.k, rng), strategy});
    const std::size_t victim = alive[std::uniform_int_distribution<std::size_t>(0, alive.size() - 1)(rng)];
    s.events.push_back({DssEventKind::fail, victim, {}, strategy});
    std::erase(alive, victim);
    s.events.push_back({DssEventKind::repair, 0, sample(alive, p.d, rng), strategy});
    alive.push_back(next++);
    s.events.push_back({DssEventKind::dc_read, 0, sample(alive, p.k, rng), strategy});
  }
  return s;
}

ScenarioResult run_scenario(const IntMatrix& file, const DssParams& params, std::uint64_t seed,
                            const ScenarioScript& script, std::optional<IntMatrix> storage) {
  DssSystem system(file, params, seed, std::move(storage));
  ScenarioResult result;
  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const auto& ev = script.events[i];
    try {
      switch (ev.kind) {
        case DssEventKind::init: break;
        case DssEventKind::fail: system.fail(ev.node); break;
        case DssEventKind::adversary: system.set_adversaries(ev.nodes, ev.strategy); break;
        case DssEventKind::repair: (void)system.repair(ev.nodes); break;
        case DssEventKind::dc_read: {
          ++result.reads;
          if (system.dc_read(ev.nodes) == file) ++result.exact_reads;
          else result.failures.push_back("event " + std::to_string(i) + ": decoded file differs");
          break;
        }
      }
    } catch (const std::runtime_error& err) {
      result.failures.push_back("event " + std::to_string(i) + " (" + std::string(to_string(ev.kind)) +
                                "): " + err.what());
      break;
    }
    if (!system.honest_data_invariant()) {
      result.invariant_held = false;
      result.failures.push_back("event " + std::to_string(i) + ": honest node stores faulty data");
      break;
    }
  }
  result.flow = verify_flow_conditions(system);
  if (!result.flow.passed()) result.failures.push_back("flow conditions fail");
  result.history = system.history();
  return result;
}

}  // namespace polytope
