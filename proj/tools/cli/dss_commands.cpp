#include "commands.hpp"

#include "polytope/dss.hpp"
#include "polytope/error.hpp"
#include "polytope_io/json_io.hpp"

#include <memory>
#include <optional>
#include <sstream>

namespace polytope::cli {

using io::Json;

namespace {

// -- dss-sim -----------------------------------------------------------------

void add_dss_sim(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::string scenario, output, strategy = "mixed";
    std::optional<std::uint64_t> seed;
    std::size_t repairs = 10;
    DssParams params{1, 1, 8, 7, 7, 1, 0, 5, 2, 1, 1, std::nullopt};
    std::optional<unsigned long> q;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand("dss-sim", "Run a storage scenario with a roaming adversary and log every event as JSON");
  c.app->add_option("--scenario", o->scenario,
                    "Scenario JSON: {params, events | roaming, optional file and storage}; overrides the flags below");
  c.required.push_back(c.app->add_option("--seed", o->seed, "Seed (required)"));
  c.app->add_option("--alpha", o->params.alpha, "Storage per node")->capture_default_str();
  c.app->add_option("--beta", o->params.beta, "Repair bandwidth per helper")->capture_default_str();
  c.app->add_option("--n", o->params.n, "Active nodes N")->capture_default_str();
  c.app->add_option("--k", o->params.k, "Nodes read by a data collector")->capture_default_str();
  c.app->add_option("--d", o->params.d, "Helpers per repair")->capture_default_str();
  c.app->add_option("--t", o->params.t, "Adversarial nodes T")->capture_default_str();
  c.app->add_option("--rows", o->params.rows, "File rows r")->capture_default_str();
  c.app->add_option("--alphabet", o->params.alphabet, "Alphabet size K")->capture_default_str();
  c.app->add_option("--group-len", o->params.group_len, "Symbols per file entry K0")->capture_default_str();
  c.app->add_option("--columns", o->params.columns, "File columns N0")->capture_default_str();
  c.app->add_option("--q", o->q, "Coefficient range {1..q} (default: calibrated)");
  c.app->add_option("--repairs", o->repairs, "Roaming rounds when no event list is given")->capture_default_str();
  c.app->add_option("--strategy", o->strategy, "Adversary strategy for generated rounds")->capture_default_str();
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    const std::uint64_t seed = *o->seed;
    DssParams p = o->params;
    p.q = o->q;
    std::size_t repairs = o->repairs;
    DssAttack strategy = dss_attack_from_string(o->strategy);
    Json scenario = Json::object();
    if (!o->scenario.empty()) {
      scenario = io::read_json_file(o->scenario);
      if (!scenario.is_object() || !scenario.contains("params"))
        throw ParameterError("field 'params': missing from scenario");
      p = io::dss_params_from_json(scenario["params"]);
      if (scenario.contains("roaming")) {
        const Json& r = scenario["roaming"];
        if (!r.contains("repairs") || !r["repairs"].is_number_unsigned())
          throw ParameterError("field 'roaming.repairs': expected a nonnegative integer");
        repairs = r["repairs"].get<std::size_t>();
        if (r.contains("strategy")) strategy = dss_attack_from_string(r["strategy"].get<std::string>());
      }
    }
    const bool scripted = scenario.contains("events");
    if (p.lifetime == 0) {
      std::size_t created = p.n + (scripted ? 0 : repairs);
      if (scripted)
        for (const auto& e : scenario["events"])
          if (e.is_object() && e.value("type", "") == "repair") ++created;
      p.lifetime = created;
    }
    validate(p);

    std::optional<IntMatrix> storage;
    if (scenario.contains("storage")) storage = io::int_matrix_from_json(scenario["storage"], "storage");
    const IntMatrix a = storage ? *storage : default_storage_matrix(p);
    if (!p.q) p.q = calibrate_q(p, a, seed);

    IntMatrix file;
    if (scenario.contains("file")) {
      file = io::int_matrix_from_json(scenario["file"], "file");
    } else {
      auto rng = keyed_rng(seed, 0xf1);
      file = random_file(p, rng);
    }
    const ScenarioScript script =
        scripted ? io::scenario_from_json(scenario["events"]) : roaming_adversary_script(p, repairs, seed, strategy);

    const ScenarioResult result = run_scenario(file, p, seed, script, a);
    Json out{{"params", io::to_json(p)},
             {"seed", seed},
             {"file", io::to_json(file)},
             {"script", io::to_json(script)}};
    out.update(io::to_json(result));
    io::write_output(o->output, io::dump(out));
    return result.passed() ? 0 : kInvariantViolated;
  };
  commands.push_back(c);
}

// -- dss-bounds --------------------------------------------------------------

// (alpha, beta) with capacity 1 for the bound evaluated at alpha/beta = ratio.
std::pair<Rational, Rational> unit_capacity_point(const Rational& per_beta, const Rational& ratio) {
  Rational beta = 1 / per_beta;
  Rational alpha = ratio * beta;
  beta.canonicalize();
  alpha.canonicalize();
  return {alpha, beta};
}

void add_dss_bounds(CLI::App& app, std::vector<Command>& commands) {
  struct Opts {
    std::size_t k = 0, d = 0, t = 0, grid = 24;
    std::string ratio_max, alpha, beta, output;
  };
  auto o = std::make_shared<Opts>();
  Command c;
  c.app = app.add_subcommand(
      "dss-bounds", "Bandwidth-storage tradeoff CSV at unit capacity, or the bounds at one (alpha, beta) as JSON");
  c.required.push_back(c.app->add_option("--k", o->k, "Nodes read by a data collector"));
  c.required.push_back(c.app->add_option("--d", o->d, "Helpers per repair"));
  c.required.push_back(c.app->add_option("--t", o->t, "Adversarial nodes T"));
  c.app->add_option("--grid", o->grid, "Number of equal alpha/beta intervals")->check(CLI::PositiveNumber)->capture_default_str();
  c.app->add_option("--ratio-max", o->ratio_max, "Largest alpha/beta (default d - 2T, at least 1)");
  c.app->add_option("--alpha", o->alpha, "Evaluate at this alpha instead of the grid (needs --beta)");
  c.app->add_option("--beta", o->beta, "Evaluate at this beta instead of the grid (needs --alpha)");
  c.app->add_option("-o,--output", o->output, "Output path (default stdout)");
  c.run = [o] {
    if (o->alpha.empty() != o->beta.empty()) throw ParameterError("--alpha and --beta must be given together");
    if (!o->alpha.empty()) {
      const Rational alpha = io::parse_rational(o->alpha);
      const Rational beta = io::parse_rational(o->beta);
      if (beta <= 0 || alpha < beta) throw ParameterError("--alpha, --beta: requires 0 < beta <= alpha");
      Json out{{"k", o->k}, {"d", o->d}, {"t", o->t}, {"alpha", io::exact(alpha)}, {"beta", io::exact(beta)}};
      out["bounds"] = io::to_json(dss_capacity_bounds(o->k, o->d, o->t, alpha, beta));
      io::write_output(o->output, io::dump(out));
      return 0;
    }
    const Rational lo = 1;
    Rational hi = o->ratio_max.empty() ? Rational(static_cast<long>(o->d) - 2 * static_cast<long>(o->t))
                                       : io::parse_rational(o->ratio_max);
    if (hi < lo) hi = lo;
    std::ostringstream csv;
    csv << "ratio,ratio_exact,upper_alpha,upper_alpha_exact,upper_beta,upper_beta_exact,"
           "lower_alpha,lower_alpha_exact,lower_beta,lower_beta_exact\n";
    for (std::size_t i = 0; i <= o->grid; ++i) {
      Rational ratio = lo + (hi - lo) * Rational(static_cast<long>(i), static_cast<long>(o->grid));
      ratio.canonicalize();
      const auto b = dss_capacity_bounds(o->k, o->d, o->t, ratio, 1);
      if (b.lower <= 0) throw ParameterError("--k, --d, --t: zero achievable capacity");
      const auto [ua, ub] = unit_capacity_point(b.upper, ratio);
      const auto [la, lb] = unit_capacity_point(b.lower, ratio);
      csv << io::decimal(ratio) << ',' << io::exact(ratio) << ',' << io::decimal(ua) << ',' << io::exact(ua) << ','
          << io::decimal(ub) << ',' << io::exact(ub) << ',' << io::decimal(la) << ',' << io::exact(la) << ','
          << io::decimal(lb) << ',' << io::exact(lb) << '\n';
    }
    io::write_output(o->output, csv.str());
    return 0;
  };
  commands.push_back(c);
}

}  // namespace

void add_dss_commands(CLI::App& app, std::vector<Command>& commands) {
  add_dss_sim(app, commands);
  add_dss_bounds(app, commands);
}

}  // namespace polytope::cli
