#pragma once

// Byzantine-resilient distributed storage with polytope-coded matrix packets:
// functional repair from d helpers, data-collector decoding from k nodes,
// capacity bounds, and information-flow-graph checks of every run.

#include "polytope/gram.hpp"
#include "polytope/integer.hpp"
#include "polytope/max_flow.hpp"
#include "polytope/polytope_codec.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polytope {

struct DssParams {
  std::size_t alpha = 1;     // storage per node, in file-row units
  std::size_t beta = 1;      // per-helper repair bandwidth
  std::size_t n = 0;         // active nodes
  std::size_t k = 0;         // nodes read by a data collector
  std::size_t d = 0;         // helpers per repair
  std::size_t t = 0;         // nodes controlled by the adversary at any instant
  std::size_t lifetime = 0;  // L: nodes ever created
  std::size_t rows = 0;      // r: file rows
  unsigned alphabet = 2;     // K
  std::size_t group_len = 1; // K0
  std::size_t columns = 1;   // N0
  std::optional<unsigned long> q;  // coefficient range {1..q}; calibrated when absent
};

/// Throws ParameterError naming the violated condition.
void validate(const DssParams& p);

/// sum_{i=0}^{k'-1} min{(d'-i) beta, alpha}; zero when k' <= 0.
[[nodiscard]] Rational cutset_sum(long k, long d, const Rational& alpha, const Rational& beta);

struct CapacityBounds {
  Rational upper;         // cut-set bound with k, d reduced by 2T
  Rational lower;         // achievable with polytope codes
  Rational msr_alpha;     // (d-k+1) beta
  Rational msr_capacity;  // (k-2T) msr_alpha
  Rational mbr_alpha;     // (d-2T) beta
  Rational mbr_capacity;  // [(k-2T)(d-2T) - C(k-2T, 2)] beta
};

/// Requires k <= d, 2T + 1 <= k and, for T >= 1, k > F(T). At T = 0 the
/// lower bound equals the upper one.
[[nodiscard]] CapacityBounds dss_capacity_bounds(std::size_t k, std::size_t d, std::size_t t,
                                                 const Rational& alpha, const Rational& beta);

/// min over z of sum_{i<min(z, d-F)} min{(d-F-i) beta, alpha} + max(d-T-z, 0) beta:
/// the cut guaranteed into a new node's input vertex.
[[nodiscard]] Rational repair_cut_bound(std::size_t d, std::size_t t, const Rational& alpha, const Rational& beta);

/// Stored or transmitted packet (y, F, A0); honest packets satisfy y = A0 f.
struct NodePacket {
  IntMatrix data;          // gamma x N0
  GramTable gram;          // r x r Gram of the file rows
  IntMatrix coefficients;  // gamma x r

  friend bool operator==(const NodePacket&, const NodePacket&) = default;
};

enum class DssAttack {
  garbage,             // random data, claimed coefficients kept
  replay,              // the honest transmission
  forge_coefficients,  // a different combination, reported truthfully
  lie_coefficients,    // honest data, altered claimed coefficients
  permute_columns,     // data columns shuffled: self-Gram preserved
  gram_tamper,         // honest data, altered Gram copy
  mixed,               // per-transmission random pick of the above
};

[[nodiscard]] std::string_view to_string(DssAttack a);
[[nodiscard]] DssAttack dss_attack_from_string(std::string_view name);
[[nodiscard]] std::span<const DssAttack> all_dss_attacks();

enum class DssEventKind { init, fail, repair, adversary, dc_read };

[[nodiscard]] std::string_view to_string(DssEventKind k);

struct DssEvent {
  DssEventKind kind = DssEventKind::init;
  std::size_t node = 0;                 // failed or newly created node
  std::vector<std::size_t> nodes;       // helpers, adversary set, or nodes read
  std::vector<std::size_t> adversaries; // adversary set in force
  std::vector<std::size_t> trusted;     // V*_j or V*_DC as node ids
  std::size_t rank = 0;                 // honest helper rank (repair) or rank of A-hat (read)
  bool success = true;
  std::string detail;
};

/// Default storage matrix: V-matrix with alpha N rows and r columns, so every
/// r x r row-submatrix is nonsingular.
[[nodiscard]] IntMatrix default_storage_matrix(const DssParams& p);

/// Smallest power of two, at least the largest storage coefficient, for which
/// `trials` random single-repair-then-read draws all reach rank r.
[[nodiscard]] unsigned long calibrate_q(const DssParams& p, const IntMatrix& storage, std::uint64_t seed,
                                        std::size_t trials = 1000);

/// Single-threaded simulator. Node ids are creation order; the first N are the
/// initial nodes. All coefficient matrices come from seeded streams keyed by
/// (seed, i, j) and (seed, j, V), so replays are exact.
class DssSystem {
 public:
  /// `storage` overrides the default matrix and is not required to lie in
  /// {1..q}. Throws ParameterError on invalid parameters or file entries.
  DssSystem(IntMatrix file, DssParams params, std::uint64_t seed, std::optional<IntMatrix> storage = {});

  [[nodiscard]] const DssParams& params() const noexcept { return params_; }
  [[nodiscard]] const IntMatrix& file() const noexcept { return file_; }
  [[nodiscard]] const IntMatrix& storage_matrix() const noexcept { return storage_; }
  [[nodiscard]] unsigned long q() const noexcept { return q_; }
  [[nodiscard]] std::size_t nodes_created() const noexcept { return stored_.size(); }
  [[nodiscard]] std::vector<std::size_t> alive() const;
  [[nodiscard]] bool is_alive(std::size_t node) const;
  [[nodiscard]] const std::vector<std::size_t>& adversaries() const noexcept { return adversaries_; }
  [[nodiscard]] const NodePacket& stored(std::size_t node) const;
  [[nodiscard]] const std::vector<DssEvent>& history() const noexcept { return history_; }

  /// B_{i->j}: beta x alpha, entries in {1..q}.
  [[nodiscard]] IntMatrix transfer_coefficients(std::size_t from, std::size_t to) const;
  /// C_{V->j}: alpha x |V| beta, entries in {1..q}.
  [[nodiscard]] IntMatrix combine_coefficients(std::size_t node, std::span<const std::size_t> trusted) const;

  void fail(std::size_t node);
  /// Controlled nodes must be alive; at most T of them.
  void set_adversaries(std::vector<std::size_t> nodes, DssAttack strategy = DssAttack::mixed);
  /// Creates the next node from `helpers` (d distinct alive nodes) and returns
  /// its id. Throws ProtocolError if fewer than d - F(T) packets are trusted
  /// or the honest helpers' coefficients have rank below r.
  std::size_t repair(std::span<const std::size_t> helpers);
  /// Decodes the file from k distinct alive nodes. Throws DecodeError when
  /// the trusted coefficients do not pin down a unique integer file. The
  /// read is recorded in the history either way.
  IntMatrix dc_read(std::span<const std::size_t> nodes);

  /// Every alive node outside the adversary set satisfies data = A0 f.
  [[nodiscard]] bool honest_data_invariant() const;

 private:
  [[nodiscard]] NodePacket transmit(std::size_t from, const IntMatrix& b);
  [[nodiscard]] GramTable majority(std::span<const NodePacket> packets) const;
  [[nodiscard]] SyndromeGraph syndrome_graph(std::span<const NodePacket> packets, const GramTable& f) const;
  [[nodiscard]] bool is_adversary(std::size_t node) const;
  void check_nodes(std::span<const std::size_t> nodes, std::size_t expected, const char* what) const;

  DssParams params_;
  IntMatrix file_;
  IntMatrix storage_;
  GramTable gram_;
  std::uint64_t seed_;
  unsigned long q_ = 0;
  std::vector<NodePacket> stored_;
  std::vector<bool> alive_;
  std::vector<std::size_t> adversaries_;
  DssAttack strategy_ = DssAttack::mixed;
  std::mt19937_64 adversary_rng_;
  std::vector<DssEvent> history_;
};

/// File with entries drawn uniformly from {1..K^K0}.
[[nodiscard]] IntMatrix random_file(const DssParams& p, std::mt19937_64& rng);

struct FlowCheck {
  DssEventKind kind = DssEventKind::dc_read;
  std::size_t event = 0;     // index into the history
  std::size_t target = 0;    // new node or read index
  std::int64_t min_cut = 0;  // on the pruned graph
  Rational closed_form;      // guaranteed lower bound for this cut
  std::size_t rank = 0;      // coefficient rank recorded for the event
  bool cut_at_least_r = false;
  bool cut_at_least_bound = false;
  bool rank_at_least_r = false;

  [[nodiscard]] bool passed() const noexcept { return cut_at_least_r && cut_at_least_bound && rank_at_least_r; }
};

struct FlowReport {
  std::vector<FlowCheck> checks;

  [[nodiscard]] bool passed() const noexcept;
};

/// Information flow graph of the history: S, an (in, out) pair per node with
/// capacity alpha, beta links from helpers, infinite links from S to initial
/// nodes and from read nodes to each collector. Every read is checked on the
/// graph pruned to trusted links; every repair on that graph with the honest
/// links into the new node restored.
[[nodiscard]] FlowReport verify_flow_conditions(const DssSystem& system);

struct FlowGraph {
  FlowNetwork network;
  std::size_t source = 0;
  std::size_t sink = 0;
};

/// Chain graph in which the i-th of k new nodes takes i of its d links from
/// the earlier new nodes; its min-cut to a collector reading the k new nodes
/// is sum_{i<k} min{(d-i) beta, alpha}.
[[nodiscard]] FlowGraph worst_case_flow_graph(std::size_t k, std::size_t d, std::int64_t alpha, std::int64_t beta);

struct ScenarioEvent {
  DssEventKind kind = DssEventKind::dc_read;
  std::size_t node = 0;             // fail target
  std::vector<std::size_t> nodes;   // helpers, adversary set, or nodes read
  DssAttack strategy = DssAttack::mixed;
};

struct ScenarioScript {
  std::vector<ScenarioEvent> events;
};

/// `repairs` rounds of: move the adversary to T random alive nodes, read,
/// fail a random node, repair from d random alive nodes, read.
[[nodiscard]] ScenarioScript roaming_adversary_script(const DssParams& p, std::size_t repairs, std::uint64_t seed,
                                                      DssAttack strategy = DssAttack::mixed);

struct ScenarioResult {
  std::vector<DssEvent> history;
  std::size_t reads = 0;
  std::size_t exact_reads = 0;
  bool invariant_held = true;
  FlowReport flow;
  std::vector<std::string> failures;

  [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

/// Runs the script, checking the honest-data invariant after every event
/// and the flow conditions at the end. Stops at the first protocol error.
[[nodiscard]] ScenarioResult run_scenario(const IntMatrix& file, const DssParams& params, std::uint64_t seed,
                                          const ScenarioScript& script, std::optional<IntMatrix> storage = {});

}  // namespace polytope
