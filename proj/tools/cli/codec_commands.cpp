#include "commands.hpp"

#include "polytope/adversary.hpp"
#include "polytope/error.hpp"
#include "polytope/genmatrix.hpp"
#include "polytope/polytope_codec.hpp"
#include "polytope/source_packets.hpp"
#include "polytope/vpec.hpp"
#include "polytope/witness.hpp"
#include "polytope_io/json_io.hpp"

#include <algorithm>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

namespace polytope::cli {

using io::Json;

namespace {

struct CodeOptions {
  std::size_t n = 0;
  std::size_t t = 0;
  unsigned alphabet = 2;
  std::size_t group_len = 1;
  std::size_t columns = 1;
  std::size_t rotation = 0;
};

void add_code_options(CLI::App* sub, CodeOptions& o, std::vector<CLI::Option*>& required, bool rotation) {
  required.push_back(sub->add_option("--n", o.n, "Number of packets N")->check(CLI::Range(1, 64)));
  required.push_back(sub->add_option("--t", o.t, "Adversarial packet budget T"));
  sub->add_option("--alphabet", o.alphabet, "Source alphabet size K")->check(CLI::Range(2, 1 << 16))->capture_default_str();
  sub->add_option("--group-len", o.group_len, "Symbols per matrix entry K0")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--columns", o.columns, "Matrix columns N0")->check(CLI::PositiveNumber)->capture_default_str();
  if (rotation) sub->add_option("--rotate", o.rotation, "Cyclic row shift of the generator")->capture_default_str();
}

void check_code(const CodeOptions& o) {
  if (o.t >= o.n) throw ParameterError("--t: requires T < N");
}

Json code_json(const CodeOptions& o) {
  return Json{{"n", o.n},
              {"t", o.t},
              {"alphabet", o.alphabet},
              {"group_len", o.group_len},
              {"columns", o.columns},
              {"rotation", o.rotation}};
}

CodeOptions code_from_json(const Json& j) {
  auto get = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j[key].is_number_unsigned())
      throw ParameterError(std::string("field 'params.") + key + "': expected a nonnegative integer");
    return j[key].get<std::size_t>();
  };
  CodeOptions o;
  o.n = get("n");
  o.t = get("t");
  o.alphabet = static_cast<unsigned>(get("alphabet"));
  o.group_len = get("group_len");
  o.columns = get("columns");
  o.rotation = get("rotation");
  check_code(o);
  return o;
}

GeneratorMatrix generator_for(const CodeOptions& o) { return rotate_generator(build_v_matrix(o.n, o.t), o.rotation); }

SymbolString random_symbols(std::size_t length, unsigned k, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> dist(0, k - 1);
  SymbolString s(length);
  for (auto& v : s) v = dist(rng);
  return s;
}

const Json& require_member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("field '") + key + "': missing");
  return j[key];
}

// -- genmatrix ---------------------------------------------------------------

void add_genmatrix(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::size_t n = 0, t = 0, rotation = 0;
    std::string output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("genmatrix", "Print the V-matrix generator for N packets and T errors");
  c.required.push_back(c.app->add_option("n,--n", o->n, "Number of packets N")->check(CLI::Range(1, 64)));
  c.required.push_back(c.app->add_option("t,--t", o->t, "Redundancy T (columns N - T)"));
  c.app->add_option("--rotate", o->rotation, "Cyclic downward row shift")->capture_default_str();
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    if (o->t >= o->n) throw ParameterError("t: requires T < N");
    io::write_output(o->output, io::dump(io::to_json(rotate_generator(build_v_matrix(o->n, o->t), o->rotation))));
    return 0;
  };
  commands.push_back(c);
}

// -- budget ------------------------------------------------------------------

void add_budget(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    CodeOptions code;
    std::string output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("budget", "Per-packet symbol budget and rate of the layered code");
  add_code_options(c.app, o->code, c.required, false);
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    check_code(o->code);
    const auto params = make_vpec_params(o->code.n, o->code.t, o->code.alphabet, o->code.group_len, o->code.columns);
    Json out = code_json(o->code);
    out.erase("rotation");
    out["budget"] = io::to_json(vpec_budget(params));
    io::write_output(o->output, io::dump(out));
    return 0;
  };
  commands.push_back(c);
}

// -- pack / unpack -----------------------------------------------------------

void add_pack(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    CodeOptions code;
    std::string symbols, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("pack", "Pack a hex symbol string into a source block and serialized packets");
  add_code_options(c.app, o->code, c.required, true);
  c.required.push_back(c.app->add_option("--symbols", o->symbols, "Source symbols, hex-encoded"));
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    check_code(o->code);
    const auto symbols = symbols_from_hex(o->symbols, o->code.alphabet);
    const auto block =
        pack_source(symbols, o->code.alphabet, o->code.group_len, o->code.columns, o->code.n, o->code.t);
    const auto a = generator_for(o->code);
    const auto bundle = encode(block, a);
    const auto budget = symbol_budget(o->code.n, o->code.t, o->code.alphabet, o->code.group_len, o->code.columns,
                                      a.max_coefficient());
    Json packets = Json::array();
    for (const auto& p : bundle.packets())
      packets.push_back(symbols_to_hex(serialize_packet(p.codeword, p.gram, budget), o->code.alphabet));
    Json out{{"params", code_json(o->code)},
             {"block", io::to_json(block)},
             {"budget", io::to_json(budget)},
             {"packets", packets}};
    io::write_output(o->output, io::dump(out));
    return 0;
  };
  commands.push_back(c);
}

void add_unpack(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::string input, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand(
      "unpack", "Deserialize hex packets (as written by pack; null marks a lost packet) and rebuild the source");
  c.required.push_back(c.app->add_option("input,--input", o->input, "JSON file with params and packets"));
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    const Json in = io::read_json_file(o->input);
    const CodeOptions code = code_from_json(require_member(in, "params"));
    const Json& hex = require_member(in, "packets");
    if (!hex.is_array() || hex.size() != code.n)
      throw ParameterError("field 'packets': expected " + std::to_string(code.n) + " entries");
    const auto a = generator_for(code);
    const auto budget =
        symbol_budget(code.n, code.t, code.alphabet, code.group_len, code.columns, a.max_coefficient());

    Json packets = Json::array();
    IntMatrix rows(code.n - code.t, code.columns);
    std::size_t have = 0;
    for (std::size_t i = 0; i < code.n; ++i) {
      if (hex[i].is_null()) {
        packets.push_back(nullptr);
        continue;
      }
      if (!hex[i].is_string()) throw ParameterError("field 'packets[" + std::to_string(i) + "]': expected hex");
      const auto p = deserialize_packet(symbols_from_hex(hex[i].get<std::string>(), code.alphabet), budget);
      packets.push_back(io::to_json(Packet{p.codeword, p.gram}));
      if (auto row = a.source_row(i)) {
        rows.set_row(*row, p.codeword);
        ++have;
      }
    }
    Json out{{"params", code_json(code)}, {"packets", packets}};
    if (have == code.n - code.t) {
      const SourceBlock block{code.alphabet, code.group_len, code.columns, rows};
      out["symbols"] = symbols_to_hex(unpack_source(block), code.alphabet);
    } else {
      out["symbols"] = nullptr;
    }
    io::write_output(o->output, io::dump(out));
    return 0;
  };
  commands.push_back(c);
}

// -- encode / decode ---------------------------------------------------------

void add_encode(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    CodeOptions code;
    std::string symbols, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("encode", "Encode a hex symbol string into a JSON packet bundle");
  add_code_options(c.app, o->code, c.required, true);
  c.required.push_back(c.app->add_option("--symbols", o->symbols, "Source symbols, hex-encoded"));
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    check_code(o->code);
    const auto symbols = symbols_from_hex(o->symbols, o->code.alphabet);
    const auto block =
        pack_source(symbols, o->code.alphabet, o->code.group_len, o->code.columns, o->code.n, o->code.t);
    Json out{{"params", code_json(o->code)}, {"source", io::to_json(block.rows)}};
    out.update(io::to_json(encode(block, generator_for(o->code))));
    io::write_output(o->output, io::dump(out));
    return 0;
  };
  commands.push_back(c);
}

void add_decode(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::string input, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("decode", "Run the syndrome-graph decoder on a JSON bundle");
  c.required.push_back(c.app->add_option("input,--input", o->input, "Bundle JSON (generator and packets)"));
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    const Json in = io::read_json_file(o->input);
    const auto a = io::generator_from_json(require_member(in, "generator"));
    const auto received = io::received_from_json(in);
    if (received.packets.size() != a.n_packets)
      throw ParameterError("field 'packets': expected " + std::to_string(a.n_packets) + " packets");

    Json out{{"n", a.n_packets}, {"t", a.redundancy()}};
    DecodeReport report;
    try {
      report = decode(received, a);
    } catch (const BudgetViolation& err) {
      out["error"] = err.what();
      io::write_output(o->output, io::dump(out));
      return kInvariantViolated;
    }
    out.update(io::to_json(report));

    // Any N - T certified packets determine the source rows.
    Json recovered = nullptr;
    const auto& trusted = report.trusted.trusted;
    if (trusted.size() >= a.dimension && a.dimension > 0) {
      std::vector<std::size_t> use(trusted.begin(), trusted.begin() + static_cast<long>(a.dimension));
      IntMatrix y(a.dimension, received.packets[use.front()].codeword.size());
      for (std::size_t r = 0; r < use.size(); ++r) {
        if (received.packets[use[r]].codeword.size() != y.cols())
          throw ParameterError("field 'packets': certified codewords differ in length");
        y.set_row(r, received.packets[use[r]].codeword);
      }
      const auto sol = solve_exact(a.rows.select_rows(use), y);
      if (sol.status == LinearSolution::Status::unique) {
        Json rows = Json::array();
        for (const auto& row : sol.x) {
          Json values = Json::array();
          for (const auto& v : row) values.push_back(io::exact(v));
          rows.push_back(values);
        }
        recovered = rows;
      }
    }
    out["recovered_source"] = recovered;
    io::write_output(o->output, io::dump(out));
    return 0;
  };
  commands.push_back(c);
}

// -- rd-curve ----------------------------------------------------------------

void add_rd_curve(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::size_t n = 0, t = 0, grid = 10;
    std::vector<std::string> rates;
    std::string rate_min, rate_max, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("rd-curve", "Rate-distortion CSV for the layered polytope code and MDS time-sharing");
  c.required.push_back(c.app->add_option("--n", o->n, "Number of packets N"));
  c.required.push_back(c.app->add_option("--t", o->t, "Adversarial packet budget T")->check(CLI::PositiveNumber));
  c.app->add_option("--grid", o->grid, "Number of equal rate intervals")->check(CLI::PositiveNumber)->capture_default_str();
  c.app->add_option("--rate-min", o->rate_min, "Smallest rate (default 1/(N-T))");
  c.app->add_option("--rate-max", o->rate_max, "Largest rate (default 1/(N-2T))");
  c.app->add_option("--rates", o->rates, "Explicit rates such as 1/2 or 0.4; overrides the grid")->delimiter(',');
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    if (o->n < max_untrusted(o->t) + 1) throw ParameterError("--n: requires N >= F(T) + 1");
    const auto n = static_cast<long>(o->n);
    const auto t = static_cast<long>(o->t);
    std::vector<Rational> rates;
    if (!o->rates.empty()) {
      for (const auto& r : o->rates) rates.push_back(io::parse_rational(r));
    } else {
      const Rational lo = o->rate_min.empty() ? Rational(1, n - t) : io::parse_rational(o->rate_min);
      const Rational hi = o->rate_max.empty() ? Rational(1, n - 2 * t) : io::parse_rational(o->rate_max);
      if (hi < lo) throw ParameterError("--rate-max: must not be below --rate-min");
      for (std::size_t i = 0; i <= o->grid; ++i) {
        Rational r = lo + (hi - lo) * Rational(static_cast<long>(i), static_cast<long>(o->grid));
        r.canonicalize();
        rates.push_back(r);
      }
    }
    std::ostringstream csv;
    csv << "rate,rate_exact,feasible,polytope_D,polytope_D_exact,mds_D,mds_D_exact,mds_raw,mds_raw_exact\n";
    for (const auto& row : rd_tables(o->n, o->t, rates))
      csv << io::decimal(row.rate) << ',' << io::exact(row.rate) << ',' << (row.feasible ? 1 : 0) << ','
          << io::decimal(row.polytope) << ',' << io::exact(row.polytope) << ',' << io::decimal(row.mds) << ','
          << io::exact(row.mds) << ',' << io::decimal(row.mds_raw) << ',' << io::exact(row.mds_raw) << '\n';
    io::write_output(o->output, csv.str());
    return 0;
  };
  commands.push_back(c);
}

// -- simulate ----------------------------------------------------------------

struct TrialLog {
  std::vector<std::size_t> attack_set;
  TrustedSet trusted;
  Distortion distortion;
  bool gram_majority_failed = false;
  bool sound = true;
};

TrialLog run_trial(const VpecCodeParams& params, AttackStrategy strategy, long box, std::uint64_t seed,
                   std::size_t trial) {
  auto rng = keyed_rng(seed, 0x5e, {trial});
  const auto source = random_symbols(params.source_length(), params.alphabet, rng);
  const auto sent = vpec_encode(source, params);
  const auto plan = random_attack(sent, params.t, strategy, rng, box);
  const auto received = apply_attack(sent, plan, params.t);
  const auto report = vpec_decode(received, params);
  const auto honest = sent.packets();

  TrialLog log;
  log.attack_set = plan.altered;
  std::sort(log.attack_set.begin(), log.attack_set.end());
  log.trusted = report.trusted;
  log.distortion = erasure_distortion(source, report.estimate);
  log.gram_majority_failed = report.gram_majority_failed;
  for (std::size_t i : report.trusted.trusted) log.sound = log.sound && received[i].codewords == honest[i].codewords;
  return log;
}

void add_simulate(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    CodeOptions code;
    std::size_t trials = 1000, threads = 1;
    std::optional<std::uint64_t> seed;
    std::string strategy = "mixed", output;
    long box = 2;
    bool exhaustive = false;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("simulate", "Seeded attack trials against the layered code, logged as JSON");
  add_code_options(c.app, o->code, c.required, false);
  c.required.push_back(c.app->add_option("--seed", o->seed, "Seed (required)"));
  c.app->add_option("--trials", o->trials, "Number of random trials")->capture_default_str();
  c.app->add_option("--strategy", o->strategy, "garbage, perturb, permute_columns, collude, gram_tamper or mixed")
      ->capture_default_str();
  c.app->add_option("--box", o->box, "Perturbation box half-width")->check(CLI::NonNegativeNumber)->capture_default_str();
  c.app->add_flag("--exhaustive", o->exhaustive, "Also enumerate every T-packet box perturbation");
  c.app->add_option("--threads", o->threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    check_code(o->code);
    const auto strategy = attack_strategy_from_string(o->strategy);
    const auto params = make_vpec_params(o->code.n, o->code.t, o->code.alphabet, o->code.group_len, o->code.columns);
    const std::size_t f = max_untrusted(params.t);
    const Rational bound(static_cast<long>(f), static_cast<long>(params.n));
    const bool guaranteed = params.guarantee_applies();

    std::vector<TrialLog> logs(o->trials);
    std::vector<std::thread> workers;
    const std::size_t threads = std::min(o->threads, std::max<std::size_t>(o->trials, 1));
    for (std::size_t w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < o->trials; i += threads) logs[i] = run_trial(params, strategy, o->box, *o->seed, i);
      });
    for (auto& w : workers) w.join();

    std::size_t violations = 0;
    Distortion worst{false, 0};
    auto worse = [](const Distortion& a, const Distortion& b) { return a.infinite ? !b.infinite : !b.infinite && a.value > b.value; };
    auto violates = [&](const Distortion& d) { return guaranteed && (d.infinite || d.value > bound); };
    Json trials = Json::array();
    for (std::size_t i = 0; i < logs.size(); ++i) {
      const auto& l = logs[i];
      const bool ok = l.sound && !l.gram_majority_failed &&
                      (!guaranteed || l.trusted.trusted.size() + f >= params.n) && !violates(l.distortion);
      if (!ok) ++violations;
      if (worse(l.distortion, worst)) worst = l.distortion;
      trials.push_back(Json{{"trial", i},
                            {"attack_set", l.attack_set},
                            {"trusted", l.trusted.trusted},
                            {"trusted_count", l.trusted.trusted.size()},
                            {"distortion", io::decimal(l.distortion)},
                            {"distortion_exact", io::exact(l.distortion)},
                            {"ok", ok}});
    }

    Json out{{"params", code_json(o->code)}, {"seed", *o->seed}, {"strategy", o->strategy}, {"box", o->box}};
    out["params"].erase("rotation");
    out["guarantee_applies"] = guaranteed;
    out["distortion_bound"] = io::exact(bound);
    if (o->exhaustive) {
      auto rng = keyed_rng(*o->seed, 0xe5);
      const auto source = random_symbols(params.source_length(), params.alphabet, rng);
      AttackSearchOptions search;
      search.budget = params.t;
      search.box = o->box;
      const auto result = search_worst_attack(params, source, search);
      if (violates(result.worst)) ++violations;
      if (worse(result.worst, worst)) worst = result.worst;
      out["exhaustive"] = Json{{"evaluated", result.evaluated},
                               {"worst", io::decimal(result.worst)},
                               {"worst_exact", io::exact(result.worst)},
                               {"worst_attack_set", result.plan.altered}};
    }
    out["summary"] = Json{{"trials", o->trials},
                          {"max_distortion", io::decimal(worst)},
                          {"max_distortion_exact", io::exact(worst)},
                          {"violations", violations}};
    out["trials"] = trials;
    io::write_output(o->output, io::dump(out));
    return violations == 0 ? 0 : kInvariantViolated;
  };
  commands.push_back(c);
}

// -- witness -----------------------------------------------------------------

void add_witness(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::size_t t = 0, m1 = 1, m2 = 1, pad = 0;
    unsigned alphabet = 2;
    std::string last_mu, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("witness", "Build and verify a totally undecodable bundle for N = F(T)");
  c.required.push_back(c.app->add_option("--t", o->t, "Adversarial packet budget T (at least 2)")->check(CLI::Range(2, 8)));
  c.app->add_option("--alphabet", o->alphabet, "Alphabet size K")->check(CLI::Range(2, 1 << 16))->capture_default_str();
  c.app->add_option("--last-mu", o->last_mu, "Force the final shift parameter (integer)");
  c.app->add_option("--m1", o->m1, "Column-block replication")->check(CLI::PositiveNumber)->capture_default_str();
  c.app->add_option("--m2", o->m2, "Per-column replication")->check(CLI::PositiveNumber)->capture_default_str();
  c.app->add_option("--pad", o->pad, "All-ones columns to prepend")->capture_default_str();
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    WitnessOptions opts;
    opts.alphabet = o->alphabet;
    if (!o->last_mu.empty()) opts.last_mu = io::integer_from_json(Json(o->last_mu), "last-mu");
    auto w = undecodable_witness(o->t, opts);
    if (o->m1 > 1 || o->m2 > 1) w = scale_witness(w, o->m1, o->m2);
    if (o->pad > 0) w = pad_witness(w, o->pad);
    const auto report = verify_witness(w);
    Json out{{"witness", io::to_json(w)}, {"report", io::to_json(report)}};
    io::write_output(o->output, io::dump(out));
    return report.passed() ? 0 : kInvariantViolated;
  };
  commands.push_back(c);
}

}  // namespace

std::mt19937_64 keyed_rng(std::uint64_t seed, std::uint64_t tag, std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> key;
  auto push = [&](std::uint64_t v) {
    key.push_back(static_cast<std::uint32_t>(v));
    key.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  push(tag);
  for (auto w : words) push(w);
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

void add_codec_commands(CLI::App& app, std::vector<Command>& commands) {
  add_genmatrix(app, commands);
  add_pack(app, commands);
  add_unpack(app, commands);
  add_encode(app, commands);
  add_decode(app, commands);
  add_budget(app, commands);
  add_rd_curve(app, commands);
  add_simulate(app, commands);
  add_witness(app, commands);
}

}  // namespace polytope::cli
