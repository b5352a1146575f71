// SPDX-License-Identifier: Apache-2.0

#include "secrisk/codec.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "secrisk/error.hpp"

namespace secrisk::codec {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw DomainError(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw DomainError(std::string("missing field '") + name + "'");
  return *it;
}

std::string text_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_string()) throw DomainError(std::string("field '") + name + "' must be a string");
  return f.get<std::string>();
}

int int_value(const json& j, const char* what) {
  if (!j.is_number_integer()) throw DomainError(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw DomainError(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw DomainError(std::string(what) + " must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

json encode_ranks(const Cell& c) {
  return {{"likelihood", c.likelihood.value()}, {"impact", c.impact.value()}};
}

Rank decode_rank(const json& j, const OrdinalScale& scale) {
  if (j.is_string()) return scale.rank_of(j.get<std::string>());
  const Rank r(int_value(j, "rank"));
  scale.label(r);
  return r;
}

json encode_placements(const tra::Placements& p, const RiskMatrix& m) {
  json out = json::object();
  for (const auto& [id, cell] : p) out[id] = encode(cell, m);
  return out;
}

tra::Placements decode_placements(const json& j, const RiskMatrix& m) {
  if (!j.is_object()) throw DomainError("placements must be an object");
  tra::Placements out;
  for (const auto& [id, cell] : j.items()) out.emplace(id, decode_cell(cell, m));
  return out;
}

tra::IterationRecord decode_record(const json& j, const RiskMatrix& m) {
  tra::IterationRecord r;
  r.step = tra::parse_process_step(text_field(j, "step"));
  r.action = text_field(j, "action");
  r.segment = text_field(j, "zone");
  r.sl_before = decode_vector(field(j, "sl_before"));
  r.sl_after = decode_vector(field(j, "sl_after"));
  r.placements_before = decode_placements(field(j, "placements_before"), m);
  r.placements_after = decode_placements(field(j, "placements_after"), m);
  return r;
}

json fr_array(const std::vector<FoundationalRequirement>& frs) {
  json out = json::array();
  for (auto fr : frs) out.push_back(std::string(key(fr)));
  return out;
}

std::vector<FoundationalRequirement> decode_fr_list(const json& j) {
  std::vector<FoundationalRequirement> out;
  for (const auto& s : string_list(j, "FR list")) out.push_back(parse_requirement(s));
  return out;
}

semiquant::ClassValue decode_class(const json& j, semiquant::SchemeMode mode) {
  if (mode == semiquant::SchemeMode::Points && !j.is_object()) {
    const Rational v = decode_rational(j);
    return {v, v};
  }
  if (j.is_array() && j.size() == 2) return {decode_rational(j[0]), decode_rational(j[1])};
  return {decode_rational(field(j, "lo")), decode_rational(field(j, "hi"))};
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid document: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

json encode(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    const BigInt n = boost::multiprecision::numerator(q);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
      return n.convert_to<std::int64_t>();
    }
  }
  return to_string(q);
}

Rational decode_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw DomainError("expected a rational (integer, \"p/q\" or decimal)");
}

json encode(const SecurityLevelVector& v) {
  json out = {{"kind", std::string(key(v.kind()))}};
  for (auto fr : kAllRequirements) out[std::string(key(fr))] = v[fr];
  return out;
}

SecurityLevelVector decode_vector(const json& j) {
  if (j.is_array()) {
    if (j.size() != kRequirementCount) throw DomainError("SL vector needs 7 components");
    SecurityLevelVector::Levels levels{};
    for (std::size_t k = 0; k < kRequirementCount; ++k) levels[k] = int_value(j[k], "SL component");
    return SecurityLevelVector(levels);
  }
  SecurityLevelVector::Levels levels{};
  for (auto fr : kAllRequirements) {
    const std::string k(key(fr));
    levels[static_cast<std::size_t>(fr)] = int_value(field(j, k.c_str()), "SL component");
  }
  for (const auto& [k, _] : j.items()) {
    if (k == "kind") continue;
    parse_requirement(k);
  }
  const SlKind kind = j.contains("kind") ? parse_sl_kind(text_field(j, "kind")) : SlKind::Target;
  return SecurityLevelVector(levels, kind);
}

json encode(const OrdinalScale& scale) {
  return {{"name", scale.name()}, {"labels", scale.labels()}};
}

OrdinalScale decode_scale(const json& j) {
  return OrdinalScale(text_field(j, "name"), string_list(field(j, "labels"), "labels"));
}

json encode(const RiskMatrix& m) {
  json rows = json::array();
  const auto cols = static_cast<std::size_t>(m.likelihood().size());
  for (int r = 0; r < m.impact().size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cols; ++c) {
      row.push_back(std::string(key(m.bands()[static_cast<std::size_t>(r) * cols + c])));
    }
    rows.push_back(std::move(row));
  }
  return {{"likelihood", encode(m.likelihood())},
          {"impact", encode(m.impact())},
          {"bands", std::move(rows)},
          {"tolerable_risk", encode(m.tolerable_risk())}};
}

RiskMatrix decode_matrix(const json& j) {
  return guarded("risk matrix", [&] {
    OrdinalScale likelihood = decode_scale(field(j, "likelihood"));
    OrdinalScale impact = decode_scale(field(j, "impact"));
    const json& rows = field(j, "bands");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(impact.size())) {
      throw DomainError("band table needs one row per impact class");
    }
    std::vector<Band> bands;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(likelihood.size())) {
        throw DomainError("band table rows need one entry per likelihood class");
      }
      for (const auto& b : row) {
        if (!b.is_string()) throw DomainError("band entries must be strings");
        bands.push_back(parse_band(b.get<std::string>()));
      }
    }
    Rational tolerable = j.contains("tolerable_risk") ? decode_rational(j["tolerable_risk"]) : Rational(4);
    return RiskMatrix(std::move(likelihood), std::move(impact), std::move(bands), std::move(tolerable));
  });
}

json encode(const Cell& c, const RiskMatrix& m) {
  return {{"likelihood", m.likelihood().label(c.likelihood)}, {"impact", m.impact().label(c.impact)}};
}

Cell decode_cell(const json& j, const RiskMatrix& m) {
  return Cell{decode_rank(field(j, "likelihood"), m.likelihood()),
              decode_rank(field(j, "impact"), m.impact())};
}

json encode(const Architecture& a) {
  json zones = json::array();
  for (const auto& z : a.zones) zones.push_back({{"id", z.id}, {"name", z.name}, {"objects", z.objects}});
  json conduits = json::array();
  for (const auto& c : a.conduits) {
    conduits.push_back({{"id", c.id}, {"endpoints", {c.endpoints[0], c.endpoints[1]}}});
  }
  return {{"objects", a.objects}, {"zones", std::move(zones)}, {"conduits", std::move(conduits)}};
}

Architecture decode_architecture(const json& j) {
  return guarded("architecture", [&] {
    Architecture a;
    if (j.contains("objects")) a.objects = string_list(j["objects"], "objects");
    for (const auto& z : field(j, "zones")) {
      Zone zone{text_field(z, "id"), z.contains("name") ? text_field(z, "name") : std::string(), {}};
      if (z.contains("objects")) zone.objects = string_list(z["objects"], "zone objects");
      a.zones.push_back(std::move(zone));
    }
    if (j.contains("conduits")) {
      for (const auto& c : j["conduits"]) {
        auto ends = string_list(field(c, "endpoints"), "endpoints");
        if (ends.size() != 2) throw DomainError("a conduit has exactly two endpoints");
        a.conduits.push_back(Conduit{text_field(c, "id"), {ends[0], ends[1]}});
      }
    }
    return a;
  });
}

json encode(const ValidationReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) {
    findings.push_back({{"code", std::string(key(f.code))}, {"subject", f.subject}, {"message", f.message}});
  }
  return {{"ok", r.ok()}, {"findings", std::move(findings)}};
}

json encode(const tra::ThreatScenario& s, const RiskMatrix& m) {
  json effects = json::object();
  for (auto fr : kAllRequirements) {
    if (s.effects(fr).empty()) continue;
    json list = json::array();
    for (const auto& e : s.effects(fr)) {
      list.push_back({{"level", e.level},
                      {"likelihood_reduction", e.likelihood_reduction},
                      {"impact_reduction", e.impact_reduction}});
    }
    effects[std::string(key(fr))] = std::move(list);
  }
  return {{"id", s.id},
          {"description", s.description},
          {"zone", s.segment},
          {"likelihood", m.likelihood().label(s.unmitigated.likelihood)},
          {"impact", m.impact().label(s.unmitigated.impact)},
          {"fr_effects", std::move(effects)}};
}

tra::ThreatScenario decode_scenario(const json& j, const RiskMatrix& m) {
  return guarded("scenario", [&] {
    tra::ThreatScenario s;
    s.id = text_field(j, "id");
    s.description = j.contains("description") ? text_field(j, "description") : std::string();
    s.segment = text_field(j, "zone");
    s.unmitigated = Cell{decode_rank(field(j, "likelihood"), m.likelihood()),
                         decode_rank(field(j, "impact"), m.impact())};
    if (j.contains("fr_effects")) {
      for (const auto& [k, list] : j["fr_effects"].items()) {
        auto& slot = s.fr_effects[static_cast<std::size_t>(parse_requirement(k))];
        for (const auto& e : list) {
          slot.push_back(tra::LevelEffect{
              int_value(field(e, "level"), "effect level"),
              e.contains("likelihood_reduction") ? int_value(e["likelihood_reduction"], "reduction") : 0,
              e.contains("impact_reduction") ? int_value(e["impact_reduction"], "reduction") : 0});
        }
      }
    }
    auto findings = tra::scenario_findings(s, m);
    if (!findings.empty()) throw ValidationError(std::move(findings));
    return s;
  });
}

json encode(const tra::AssessmentSession& s) {
  json scenarios = json::array();
  for (const auto& sc : s.scenarios) scenarios.push_back(encode(sc, s.matrix));
  json assignment = json::object();
  for (const auto& [seg, v] : s.sl_assignment) assignment[seg] = encode(v);
  return {{"id", s.id},
          {"architecture", encode(s.architecture)},
          {"matrix", encode(s.matrix)},
          {"scenarios", std::move(scenarios)},
          {"sl_assignment", std::move(assignment)},
          {"safety_floor", s.safety_floor},
          {"history", encode_history(s)}};
}

tra::AssessmentSession decode_session(const json& j) {
  return guarded("session", [&] {
    tra::AssessmentSession s;
    s.id = j.contains("id") ? text_field(j, "id") : std::string();
    s.architecture = decode_architecture(field(j, "architecture"));
    s.matrix = j.contains("matrix") ? decode_matrix(j["matrix"]) : sample_risk_matrix();
    s.safety_floor = j.contains("safety_floor") ? field(j, "safety_floor").get<bool>() : true;
    if (j.contains("scenarios")) {
      for (const auto& sc : j["scenarios"]) s.scenarios.push_back(decode_scenario(sc, s.matrix));
    }
    const SecurityLevelVector floor = SecurityLevelVector::uniform(s.floor_level());
    if (j.contains("sl_assignment")) {
      for (const auto& [seg, v] : j["sl_assignment"].items()) s.sl_assignment.emplace(seg, decode_vector(v));
    }
    // Segments without an explicit vector start at the floor.
    for (const auto& seg : s.architecture.segment_ids()) s.sl_assignment.try_emplace(seg, floor);
    if (j.contains("history")) {
      for (const auto& r : j["history"]) s.history.push_back(decode_record(r, s.matrix));
    }
    tra::validate_session(s);
    return s;
  });
}

json encode(const tra::Evaluation& e, const RiskMatrix& m) {
  json out = json::object();
  for (const auto& [id, ev] : e) {
    out[id] = {{"placement", encode(ev.placement, m)},
               {"band", std::string(key(ev.band))},
               {"acceptable", ev.acceptable}};
  }
  return out;
}

json encode(const tra::IterationRecord& r, const RiskMatrix& m) {
  return {{"step", std::string(tra::key(r.step))},
          {"step_number", static_cast<int>(r.step)},
          {"action", r.action},
          {"zone", r.segment},
          {"sl_before", encode(r.sl_before)},
          {"sl_after", encode(r.sl_after)},
          {"placements_before", encode_placements(r.placements_before, m)},
          {"placements_after", encode_placements(r.placements_after, m)}};
}

json encode_history(const tra::AssessmentSession& s) {
  json out = json::array();
  for (const auto& r : s.history) out.push_back(encode(r, s.matrix));
  return out;
}

json encode(const tra::IterationOutcome& o) {
  json assignment = json::object();
  for (const auto& [seg, v] : o.session.sl_assignment) assignment[seg] = encode(v);
  return {{"outcome", std::string(tra::key(o.kind))},
          {"iterations", o.iterations},
          {"residual", o.residual},
          {"sl_assignment", std::move(assignment)},
          {"evaluation", encode(o.evaluation, o.session.matrix)},
          {"history", encode_history(o.session)}};
}

json encode_minimal(const std::string& segment, const std::vector<SecurityLevelVector>& vectors) {
  json list = json::array();
  for (const auto& v : vectors) list.push_back(encode(v));
  return {{"zone", segment}, {"minimal_vectors", std::move(list)}};
}

json encode(const std::vector<tra::ScenarioComparison>& report, const RiskMatrix& m) {
  json out = json::array();
  for (const auto& c : report) {
    json required = json::array();
    for (const auto& r : c.required) {
      required.push_back({{"vector", encode(r.vector)},
                          {"undershoot", fr_array(r.undershoot)},
                          {"overshoot", fr_array(r.overshoot)}});
    }
    out.push_back({{"scenario", c.scenario},
                   {"zone", c.segment},
                   {"draft", encode(c.draft, m)},
                   {"required", std::move(required)},
                   {"undershoot", c.undershoot},
                   {"overshoot", c.overshoot},
                   {"unfixable", c.unfixable},
                   {"scalar_vector", encode(c.scalar_vector)},
                   {"scalar_vector_acceptable", c.scalar_vector_acceptable}});
  }
  return out;
}

json encode(const draft::Warning& w, const RiskMatrix& m) {
  json out = {{"code", std::string(draft::key(w.code))}, {"message", w.message}};
  if (w.code == draft::WarningCode::BandAnomaly) {
    out["band"] = std::string(key(w.band.value_or(Band::Unacceptable)));
    out["sl_t_values"] = w.sl_t_values;
    json pairs = json::array();
    for (const auto& [a, b] : w.witness_pairs) {
      json pair = json::array();
      for (const Cell& c : {a, b}) {
        const Rational risk(draft::risk_product(m, c));
        pair.push_back({{"cell", encode(c, m)},
                        {"risk", encode(risk)},
                        {"sl_t", draft::sl_t_scalar(risk, m.tolerable_risk())}});
      }
      pairs.push_back(std::move(pair));
    }
    out["witness_pairs"] = std::move(pairs);
  }
  return out;
}

json encode(const draft::DraftResult& r, const RiskMatrix& m) {
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back(encode(w, m));
  return {{"cell", encode(r.cell, m)},
          {"risk", encode(r.risk)},
          {"tolerable_risk", encode(r.tolerable_risk)},
          {"tolerable_risk_justified", r.tolerable_risk_justified},
          {"crrf", encode(r.crrf)},
          {"sl_t", r.sl_t},
          {"warnings", std::move(warnings)}};
}

json encode_anomalies(const std::vector<draft::Warning>& anomalies, const RiskMatrix& m) {
  json out = json::array();
  for (const auto& w : anomalies) out.push_back(encode(w, m));
  return out;
}

json encode(const semiquant::ClassIntervalScheme& s) {
  auto classes = [](const std::vector<semiquant::ClassValue>& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back({{"lo", encode(c.lo)}, {"hi", encode(c.hi)}});
    return out;
  };
  return {{"name", s.name()},
          {"mode", std::string(semiquant::key(s.mode()))},
          {"likelihood", classes(s.likelihood())},
          {"impact", classes(s.impact())}};
}

semiquant::ClassIntervalScheme decode_scheme(const json& j) {
  return guarded("scheme", [&] {
    const std::string mode_text = j.contains("mode") ? text_field(j, "mode") : std::string("intervals");
    semiquant::SchemeMode mode;
    if (mode_text == "intervals") {
      mode = semiquant::SchemeMode::Intervals;
    } else if (mode_text == "points") {
      mode = semiquant::SchemeMode::Points;
    } else {
      throw DomainError("unknown scheme mode '" + mode_text + "'");
    }
    auto classes = [&](const char* name) {
      std::vector<semiquant::ClassValue> out;
      const json& list = field(j, name);
      if (!list.is_array()) throw DomainError(std::string(name) + " classes must be an array");
      for (const auto& c : list) out.push_back(decode_class(c, mode));
      return out;
    };
    return semiquant::ClassIntervalScheme(j.contains("name") ? text_field(j, "name") : std::string("custom"),
                                          mode, classes("likelihood"), classes("impact"));
  });
}

json encode(const semiquant::SpreadReport& r) {
  json groups = json::array();
  for (const auto& [crit, g] : r.per_criticality) {
    json cells = json::array();
    for (const auto& c : g.cells) cells.push_back(encode_ranks(c));
    groups.push_back({{"criticality", crit},
                      {"cells", std::move(cells)},
                      {"risk_min", encode(g.risk_min)},
                      {"risk_max", encode(g.risk_max)},
                      {"spread_ratio", encode(g.spread_ratio)},
                      {"min_cell", encode_ranks(g.min_cell)},
                      {"max_cell", encode_ranks(g.max_cell)}});
  }
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"criticality", w.criticality}, {"low", encode_ranks(w.low)}, {"high", encode_ranks(w.high)}});
  }
  return {{"per_criticality", std::move(groups)},
          {"global_max_spread", encode(r.global_max_spread)},
          {"witnesses", std::move(witnesses)}};
}

json encode_series(const semiquant::SpreadReport& r) {
  json out = json::array();
  for (const auto& [crit, g] : r.per_criticality) {
    out.push_back({crit, encode(g.risk_min), encode(g.risk_max)});
  }
  return out;
}

json encode(const semiquant::RequirementViolations& v) {
  auto pairs = [](const std::vector<semiquant::CellPair>& list) {
    json out = json::array();
    for (const auto& p : list) out.push_back({encode_ranks(p.a), encode_ranks(p.b)});
    return out;
  };
  return {{"req1_violations", pairs(v.req1)}, {"req2_violations", pairs(v.req2)}};
}

tra::ScriptStrategy decode_script(const json& j) {
  return guarded("script", [&] {
    const json& list = j.is_array() ? j : field(j, "actions");
    tra::ScriptStrategy script;
    for (const auto& a : list) {
      tra::ScriptAction action;
      action.segment = text_field(a, "zone");
      if (a.contains("vector")) {
        action.vector = decode_vector(a["vector"]);
      } else {
        action.bump = decode_fr_list(field(a, "bump"));
      }
      script.actions.push_back(std::move(action));
    }
    return script;
  });
}

}  // namespace secrisk::codec
