#include "polytope_io/json_io.hpp"

#include "polytope/error.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace polytope::io {

namespace {

[[noreturn]] void bad(std::string_view field, std::string_view what) {
  throw ParameterError("field '" + std::string(field) + "': " + std::string(what));
}

const Json& member(const Json& j, std::string_view field) {
  if (!j.is_object()) bad(field, "enclosing value is not an object");
  auto it = j.find(std::string(field));
  if (it == j.end()) bad(field, "missing");
  return *it;
}

std::size_t size_from_json(const Json& j, std::string_view field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::size_t size_member(const Json& j, std::string_view field) { return size_from_json(member(j, field), field); }

template <typename T>
T size_member_or(const Json& j, std::string_view field, T fallback) {
  return j.contains(std::string(field)) ? static_cast<T>(size_member(j, field)) : fallback;
}

std::vector<std::size_t> index_list(const Json& j, std::string_view field) {
  if (!j.is_array()) bad(field, "expected an array of node indices");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(size_from_json(v, field));
  return out;
}

Json index_json(const std::vector<std::size_t>& v) { return Json(v); }

Json mask_json(std::uint64_t mask, std::size_t n) {
  Json out = Json::array();
  for (std::size_t v = 0; v < n; ++v)
    if ((mask >> v) & 1U) out.push_back(v);
  return out;
}

}  // namespace

Json to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row_vector(r)));
  return out;
}

Json to_json(const GramTable& g) { return Json{{"size", g.size()}, {"upper", to_json(g.upper_triangle())}}; }

Json to_json(const GeneratorMatrix& a) {
  Json out{{"n", a.n_packets}, {"t", a.redundancy()}, {"rotation", a.rotation}};
  out["alphas"] = to_json(IntVector(a.alphas.begin(), a.alphas.end()));
  out["rows"] = to_json(a.rows);
  return out;
}

Json to_json(const SourceBlock& b) {
  return Json{{"alphabet", b.alphabet}, {"group_len", b.group_len}, {"columns", b.columns}, {"rows", to_json(b.rows)}};
}

Json to_json(const Packet& p) { return Json{{"codeword", to_json(p.codeword)}, {"gram", to_json(p.gram)}}; }

Json to_json(const TransmittedBundle& b) {
  Json packets = Json::array();
  for (const auto& p : b.packets()) packets.push_back(to_json(p));
  return Json{{"generator", to_json(b.generator)}, {"gram", to_json(b.gram)}, {"packets", packets}};
}

Json to_json(const SyndromeGraph& g) {
  Json out = Json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out.push_back(Json{{"vertex", v}, {"loop", g.has_loop(v)}, {"neighbours", mask_json(g.neighbours(v), g.vertex_count())}});
  return out;
}

Json to_json(const TrustedSet& s) {
  return Json{{"looped", index_json(s.looped)},
              {"clique_members", index_json(s.clique_members)},
              {"trusted", index_json(s.trusted)},
              {"no_clique", s.no_clique}};
}

Json to_json(const DecodeReport& r) {
  return Json{{"gram", to_json(r.gram)}, {"vertices", to_json(r.graph)}, {"trusted_set", to_json(r.trusted)}};
}

std::string exact(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
}

std::string decimal(const Rational& v) { return to_fixed(v, kDecimalDigits); }
std::string decimal(const Distortion& d) { return d.infinite ? "inf" : decimal(d.value); }
std::string exact(const Distortion& d) { return d.infinite ? "inf" : exact(d.value); }

Json to_json(const Distortion& d) { return Json{{"value", decimal(d)}, {"exact", exact(d)}}; }

Json to_json(const PacketBudget& b) {
  return Json{{"alphabet", b.alphabet},        {"group_len", b.group_len},     {"columns", b.columns},
              {"dimension", b.dimension},      {"entry_width", b.entry_width}, {"gram_width", b.gram_width},
              {"gram_count", b.gram_count},    {"total_symbols", b.total_symbols},
              {"rate", decimal(b.rate)},       {"rate_exact", exact(b.rate)}};
}

Json to_json(const UndecodableWitness& w) {
  Json mu = Json::array();
  for (const auto& m : w.mu) mu.push_back(to_json(m));
  Json nu = Json::array();
  for (const auto& m : w.nu) nu.push_back(to_json(m));
  Json variants = Json::array();
  for (const auto& v : w.variants) variants.push_back(to_json(v));
  Json codewords = Json::array();
  for (const auto& c : w.codewords) codewords.push_back(to_json(c));
  return Json{{"t", w.t},
              {"n", w.n},
              {"generator", to_json(w.generator)},
              {"hadamard_order", w.hadamard_order},
              {"hadamard", to_json(w.hadamard)},
              {"columns", w.columns},
              {"alphabet", w.alphabet},
              {"group_len", to_json(w.group_len)},
              {"mu", mu},
              {"nu", nu},
              {"last_mu", to_json(w.last_mu)},
              {"excluded_last_mu", to_json(IntVector(w.excluded.begin(), w.excluded.end()))},
              {"source", to_json(w.source)},
              {"variants", variants},
              {"codewords", codewords},
              {"received", to_json(w.received)},
              {"gram", to_json(w.gram)}};
}

Json to_json(const WitnessReport& r) {
  Json ptc = Json::array();
  for (const auto& c : r.ptc)
    ptc.push_back(Json{{"gram_matches", c.gram_matches},
                       {"rows_differing", c.rows_differing},
                       {"within_budget", c.within_budget},
                       {"parity_consistent", c.parity_consistent},
                       {"passed", c.passed()}});
  return Json{{"passed", r.passed()},
              {"entries_positive", r.entries_positive},
              {"gram_invariant", r.gram_invariant},
              {"variants", ptc},
              {"unambiguous_rows", index_json(r.unambiguous_rows)},
              {"trusted_set", to_json(r.trusted)},
              {"failures", r.failures}};
}

Json to_json(const DssParams& p) {
  Json out{{"alpha", p.alpha}, {"beta", p.beta},         {"n", p.n},       {"k", p.k},
           {"d", p.d},         {"t", p.t},               {"lifetime", p.lifetime}, {"rows", p.rows},
           {"alphabet", p.alphabet}, {"group_len", p.group_len}, {"columns", p.columns}};
  if (p.q) out["q"] = *p.q;
  return out;
}

Json to_json(const DssEvent& e) {
  Json out{{"type", std::string(to_string(e.kind))}};
  if (e.kind == DssEventKind::fail || e.kind == DssEventKind::repair) out["node"] = e.node;
  if (e.kind != DssEventKind::fail) out["nodes"] = index_json(e.nodes);
  out["adversaries"] = index_json(e.adversaries);
  if (e.kind == DssEventKind::repair || e.kind == DssEventKind::dc_read) {
    out["trusted"] = index_json(e.trusted);
    out["rank"] = e.rank;
  }
  out["success"] = e.success;
  if (!e.detail.empty()) out["detail"] = e.detail;
  return out;
}

Json to_json(const FlowCheck& c) {
  return Json{{"type", std::string(to_string(c.kind))},
              {"event", c.event},
              {"target", c.target},
              {"min_cut", c.min_cut},
              {"closed_form", exact(c.closed_form)},
              {"rank", c.rank},
              {"cut_at_least_r", c.cut_at_least_r},
              {"cut_at_least_bound", c.cut_at_least_bound},
              {"rank_at_least_r", c.rank_at_least_r},
              {"passed", c.passed()}};
}

Json to_json(const ScenarioScript& s) {
  Json events = Json::array();
  for (const auto& e : s.events) {
    Json ev{{"type", std::string(to_string(e.kind))}};
    if (e.kind == DssEventKind::fail) ev["node"] = e.node;
    else ev["nodes"] = index_json(e.nodes);
    if (e.kind == DssEventKind::adversary) ev["strategy"] = std::string(to_string(e.strategy));
    events.push_back(ev);
  }
  return events;
}

Json to_json(const ScenarioResult& r) {
  Json events = Json::array();
  for (const auto& e : r.history) events.push_back(to_json(e));
  Json checks = Json::array();
  for (const auto& c : r.flow.checks) checks.push_back(to_json(c));
  return Json{{"passed", r.passed()},
              {"reads", r.reads},
              {"exact_reads", r.exact_reads},
              {"invariant_held", r.invariant_held},
              {"flow_passed", r.flow.passed()},
              {"failures", r.failures},
              {"events", events},
              {"flow_checks", checks}};
}

Json to_json(const CapacityBounds& b) {
  Json out;
  auto put = [&](const char* name, const Rational& v) {
    out[name] = decimal(v);
    out[std::string(name) + "_exact"] = exact(v);
  };
  put("upper", b.upper);
  put("lower", b.lower);
  put("msr_alpha", b.msr_alpha);
  put("msr_capacity", b.msr_capacity);
  put("mbr_alpha", b.mbr_alpha);
  put("mbr_capacity", b.mbr_capacity);
  return out;
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-") throw std::invalid_argument(s);
      Rational v(Integer(digits, 10), ipow(Integer(10), s.size() - dot - 1));
      v.canonicalize();
      return v;
    }
    Rational v(s, 10);
    if (v.get_den() == 0) throw std::invalid_argument(s);
    v.canonicalize();
    return v;
  } catch (const std::invalid_argument&) {
    throw ParameterError("not a rational number: '" + s + "'");
  }
}

Integer integer_from_json(const Json& j, std::string_view field) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
      bad(field, "not an integer: '" + j.get<std::string>() + "'");
    }
  }
  bad(field, "expected an integer or a decimal string");
}

IntVector int_vector_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) bad(field, "expected an array");
  IntVector out;
  for (const auto& v : j) out.push_back(integer_from_json(v, field));
  return out;
}

IntMatrix int_matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array()) bad(field, "expected an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r, field));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) bad(field, "rows differ in length");
  return IntMatrix::from_rows(rows, cols);
}

GramTable gram_from_json(const Json& j, std::string_view field) {
  const std::size_t size = size_member(j, "size");
  const IntVector upper = int_vector_from_json(member(j, "upper"), field);
  if (upper.size() != gram_entry_count(size))
    bad(field, "expected " + std::to_string(gram_entry_count(size)) + " upper-triangle entries");
  return GramTable::from_upper_triangle(upper, size);
}

GeneratorMatrix generator_from_json(const Json& j) {
  const std::size_t n = size_member(j, "n");
  const std::size_t t = size_member(j, "t");
  const std::size_t rotation = size_member_or<std::size_t>(j, "rotation", 0);
  if (n == 0 || t >= n) bad("generator", "requires 0 <= T < N");
  if (n > 64) bad("generator.n", "at most 64 packets are supported");
  GeneratorMatrix a = rotate_generator(build_v_matrix(n, t), rotation);
  if (j.contains("rows") && int_matrix_from_json(j["rows"], "generator.rows") != a.rows)
    bad("generator.rows", "does not match the V-matrix for the given n, t and rotation");
  return a;
}

SourceBlock source_block_from_json(const Json& j) {
  SourceBlock b;
  b.alphabet = static_cast<unsigned>(size_member(j, "alphabet"));
  b.group_len = size_member(j, "group_len");
  b.columns = size_member(j, "columns");
  b.rows = int_matrix_from_json(member(j, "rows"), "rows");
  if (b.rows.cols() != b.columns) bad("rows", "width differs from 'columns'");
  return b;
}

Packet packet_from_json(const Json& j, std::string_view field) {
  return Packet{int_vector_from_json(member(j, "codeword"), field), gram_from_json(member(j, "gram"), field)};
}

ReceivedBundle received_from_json(const Json& j) {
  const Json& packets = member(j, "packets");
  if (!packets.is_array()) bad("packets", "expected an array");
  ReceivedBundle out;
  for (std::size_t i = 0; i < packets.size(); ++i)
    out.packets.push_back(packet_from_json(packets[i], "packets[" + std::to_string(i) + "]"));
  return out;
}

DssParams dss_params_from_json(const Json& j) {
  DssParams p;
  p.alpha = size_member(j, "alpha");
  p.beta = size_member(j, "beta");
  p.n = size_member(j, "n");
  p.k = size_member(j, "k");
  p.d = size_member(j, "d");
  p.t = size_member(j, "t");
  p.rows = size_member(j, "rows");
  p.lifetime = size_member_or<std::size_t>(j, "lifetime", 0);
  p.alphabet = size_member_or<unsigned>(j, "alphabet", 2);
  p.group_len = size_member_or<std::size_t>(j, "group_len", 1);
  p.columns = size_member_or<std::size_t>(j, "columns", 1);
  if (j.contains("q")) p.q = size_member(j, "q");
  return p;
}

DssEventKind dss_event_kind_from_string(std::string_view name) {
  for (auto k : {DssEventKind::init, DssEventKind::fail, DssEventKind::repair, DssEventKind::adversary,
                 DssEventKind::dc_read})
    if (to_string(k) == name) return k;
  throw ParameterError("unknown event type '" + std::string(name) + "'");
}

ScenarioScript scenario_from_json(const Json& j) {
  if (!j.is_array()) bad("events", "expected an array");
  ScenarioScript s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "events[" + std::to_string(i) + "]";
    const Json& e = j[i];
    const Json& type = member(e, "type");
    if (!type.is_string()) bad(field + ".type", "expected a string");
    ScenarioEvent ev;
    ev.kind = dss_event_kind_from_string(type.get<std::string>());
    if (ev.kind == DssEventKind::fail) ev.node = size_member(e, "node");
    else if (ev.kind != DssEventKind::init) ev.nodes = index_list(member(e, "nodes"), field + ".nodes");
    if (e.contains("strategy")) ev.strategy = dss_attack_from_string(member(e, "strategy").get<std::string>());
    s.events.push_back(std::move(ev));
  }
  return s;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw ParameterError("'" + path + "' is not valid JSON: " + err.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_output(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << text;
}

}  // namespace polytope::io
