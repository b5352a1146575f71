// SPDX-License-Identifier: Apache-2.0

#include "secrisk/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "secrisk/codec.hpp"
#include "secrisk/error.hpp"
#include "secrisk/service.hpp"

namespace secrisk::cli {

namespace {

using codec::json;

std::string resolve(const std::string& path) {
  if (!std::filesystem::exists(path) && std::filesystem::exists(path + ".json")) return path + ".json";
  return path;
}

tra::AssessmentSession load_session(const std::string& path) {
  return codec::decode_session(codec::read_file(resolve(path)));
}

std::string ansi(Band b) {
  switch (b) {
    case Band::Acceptable: return "\x1b[42;30m";
    case Band::Tolerable: return "\x1b[43;30m";
    case Band::Unacceptable: return "\x1b[41;37m";
  }
  return "";
}

// Placement board: impact rows, likelihood columns, scenario ids in cells.
void print_board(std::ostream& out, const RiskMatrix& m, const std::map<std::string, Cell>& chips) {
  constexpr int w = 12;
  out << std::setw(w) << "";
  for (const auto& l : m.likelihood().labels()) out << std::setw(w) << l;
  out << '\n';
  for (int i = 1; i <= m.impact().size(); ++i) {
    out << std::setw(w) << m.impact().label(Rank(i));
    for (int l = 1; l <= m.likelihood().size(); ++l) {
      const Cell c{Rank(l), Rank(i)};
      std::string ids;
      for (const auto& [id, at] : chips) {
        if (at == c) ids += (ids.empty() ? "" : ",") + id;
      }
      out << ansi(m.band(c)) << std::setw(w) << ids << "\x1b[0m";
    }
    out << '\n';
  }
}

void print_warnings(std::ostream& out, const std::vector<draft::Warning>& warnings) {
  for (const auto& w : warnings) out << "  warning[" << draft::key(w.code) << "]: " << w.message << '\n';
}

struct Options {
  bool pretty = false;

  std::string likelihood, impact, tolerable, matrix_file;
  bool safety = false;

  std::string scheme = "decade";
  bool series = false;

  std::string session_file, zone, out_file;
  std::vector<std::string> strategy{"greedy"};

  std::string addr = "127.0.0.1:8080";
  std::string data_dir = "data";
  std::string ui_dir;
};

RiskMatrix matrix_from(const std::string& file) {
  if (file.empty() || file == "sample") return sample_risk_matrix();
  return codec::decode_matrix(codec::read_file(resolve(file)));
}

int cmd_draft_eval(const Options& o, std::ostream& out) {
  const RiskMatrix m = matrix_from(o.matrix_file);
  const Cell cell{m.likelihood().rank_of(o.likelihood), m.impact().rank_of(o.impact)};
  std::optional<Rational> tolerable;
  if (!o.tolerable.empty()) tolerable = parse_rational(o.tolerable);
  const auto result = draft::evaluate_draft(cell, m, o.safety, tolerable);
  if (o.pretty) {
    out << "R=" << to_string(result.risk) << " CRRF=" << to_string(result.crrf) << " SL-T=" << result.sl_t
        << (result.tolerable_risk_justified ? "" : "  (tolerable risk " + to_string(result.tolerable_risk) +
                                                       " is the unjustified default)")
        << '\n';
    print_warnings(out, result.warnings);
  } else {
    out << codec::to_text(codec::encode(result, m));
  }
  return kExitOk;
}

int cmd_draft_anomalies(const Options& o, std::ostream& out) {
  const RiskMatrix m = matrix_from(o.matrix_file);
  const auto anomalies = draft::find_band_anomalies(m);
  if (o.pretty) {
    if (anomalies.empty()) out << "no band anomalies\n";
    for (const auto& w : anomalies) {
      out << key(*w.band) << ": SL-T values";
      for (int v : w.sl_t_values) out << ' ' << v;
      out << '\n';
      for (const auto& [a, b] : w.witness_pairs) {
        out << "  R=" << draft::risk_product(m, a) << " -> " << draft::sl_t_scalar(draft::risk_product(m, a))
            << "  vs  R=" << draft::risk_product(m, b) << " -> "
            << draft::sl_t_scalar(draft::risk_product(m, b)) << '\n';
      }
    }
  } else {
    out << codec::to_text(codec::encode_anomalies(anomalies, m));
  }
  return kExitOk;
}

int cmd_spread(const Options& o, std::ostream& out) {
  const auto scheme = o.scheme == "decade" ? semiquant::decade_scheme()
                                           : codec::decode_scheme(codec::read_file(resolve(o.scheme)));
  const auto report = semiquant::spread_analysis(scheme);
  if (o.series) {
    out << codec::to_text(codec::encode_series(report));
  } else if (o.pretty) {
    out << std::setw(12) << "criticality" << std::setw(8) << "cells" << std::setw(16) << "risk_min"
        << std::setw(16) << "risk_max" << std::setw(12) << "spread" << '\n';
    for (const auto& [crit, g] : report.per_criticality) {
      out << std::setw(12) << crit << std::setw(8) << g.cells.size() << std::setw(16) << to_string(g.risk_min)
          << std::setw(16) << to_string(g.risk_max) << std::setw(12) << to_string(g.spread_ratio) << '\n';
    }
    out << "max spread " << to_string(report.global_max_spread);
    for (const auto& w : report.witnesses) {
      out << " at criticality " << w.criticality << " (" << w.low.likelihood.value() << ','
          << w.low.impact.value() << ") vs (" << w.high.likelihood.value() << ',' << w.high.impact.value()
          << ')';
    }
    out << '\n';
  } else {
    out << codec::to_text(codec::encode(report));
  }
  return kExitOk;
}

int cmd_tra_evaluate(const Options& o, std::ostream& out) {
  const auto session = load_session(o.session_file);
  const auto eval = tra::evaluate_session(session);
  if (o.pretty) {
    std::map<std::string, Cell> chips;
    for (const auto& [id, e] : eval) chips.emplace(id, e.placement);
    print_board(out, session.matrix, chips);
    for (const auto& [id, e] : eval) {
      out << id << ": " << session.matrix.likelihood().label(e.placement.likelihood) << '/'
          << session.matrix.impact().label(e.placement.impact) << ' ' << key(e.band) << '\n';
    }
  } else {
    out << codec::to_text(codec::encode(eval, session.matrix));
  }
  return kExitOk;
}

int cmd_tra_run(const Options& o, std::ostream& out) {
  const auto session = load_session(o.session_file);
  tra::Strategy strategy = tra::GreedyStrategy{};
  if (o.strategy.at(0) == "script") {
    if (o.strategy.size() != 2) throw CLI::ValidationError("--strategy", "script needs a FILE");
    strategy = codec::decode_script(codec::read_file(resolve(o.strategy[1])));
  } else if (o.strategy.at(0) != "greedy" || o.strategy.size() != 1) {
    throw CLI::ValidationError("--strategy", "expected 'greedy' or 'script FILE'");
  }
  const auto outcome = tra::iterate_until_acceptable(session, strategy);
  if (!o.out_file.empty()) {
    std::ofstream f(o.out_file);
    f << codec::to_text(codec::encode(outcome.session));
    if (!f) throw DomainError("cannot write '" + o.out_file + "'");
  }
  if (o.pretty) {
    out << tra::key(outcome.kind) << " after " << outcome.iterations << " step(s)\n";
    for (const auto& rec : outcome.session.history) {
      out << "  [" << static_cast<int>(rec.step) << ' ' << tra::key(rec.step) << "] " << rec.action << ": "
          << to_string(rec.sl_before) << " -> " << to_string(rec.sl_after) << '\n';
    }
    for (const auto& [seg, v] : outcome.session.sl_assignment) out << seg << " = " << to_string(v) << '\n';
    for (const auto& id : outcome.residual) out << "unresolved: " << id << '\n';
  } else {
    out << codec::to_text(codec::encode(outcome));
  }
  return kExitOk;
}

int cmd_tra_minimize(const Options& o, std::ostream& out) {
  const auto session = load_session(o.session_file);
  const auto vectors = tra::auto_minimize(session, o.zone);
  if (o.pretty) {
    if (vectors.empty()) out << "no admissible vector makes every scenario of " << o.zone << " acceptable\n";
    for (const auto& v : vectors) out << to_string(v) << '\n';
  } else {
    out << codec::to_text(codec::encode_minimal(o.zone, vectors));
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto session = load_session(o.session_file);
  const auto report = tra::compare_with_draft(session);
  if (o.pretty) {
    for (const auto& c : report) {
      out << c.scenario << ": draft SL-T " << c.draft.sl_t << " (R=" << to_string(c.draft.risk) << ")";
      for (const auto& r : c.required) {
        out << "  needs " << to_string(r.vector);
        if (!r.undershoot.empty()) {
          out << " under-shoot on";
          for (auto fr : r.undershoot) out << ' ' << abbreviation(fr);
        }
      }
      if (c.unfixable) out << "  no vector suffices";
      out << '\n';
      print_warnings(out, c.draft.warnings);
    }
  } else {
    out << codec::to_text(codec::encode(report, session.matrix));
  }
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const json doc = codec::read_file(resolve(o.session_file));
  const Architecture arch = codec::decode_architecture(doc.at("architecture"));
  const auto report = validate_architecture(arch);
  out << codec::to_text(codec::encode(report));
  return report.ok() ? kExitOk : kExitDomainError;
}

int cmd_serve(const Options& o, std::ostream& err) {
  const auto colon = o.addr.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--addr", "expected HOST:PORT");
  const std::string host = o.addr.substr(0, colon);
  const int port = std::stoi(o.addr.substr(colon + 1));
  service::SessionStore store(o.data_dir);
  service::AssessmentApi api(store);
  service::HttpServer server(api, o.ui_dir);
  const int bound = server.bind(host, port);
  if (bound < 0) throw DomainError("cannot bind " + o.addr);
  err << "listening on " << host << ':' << bound << ", data in " << store.directory().string() << std::endl;
  return server.listen() ? kExitOk : kExitDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"IEC 62443 security-level workbench: draft scalar SL-T, spread analysis, iterative TRA"};
  app.name("secrisk");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Human-readable tables instead of JSON");

  auto* draft_cmd = app.add_subcommand("draft", "Draft scalar SL-T derivation");
  draft_cmd->require_subcommand(1);
  auto* eval = draft_cmd->add_subcommand("eval", "Evaluate one matrix cell");
  eval->add_option("--likelihood", o.likelihood, "Likelihood class (label or rank)")->required();
  eval->add_option("--impact", o.impact, "Impact class (label or rank)")->required();
  eval->add_option("--tolerable", o.tolerable, "Tolerable risk (rational, default 4)");
  eval->add_option("--matrix", o.matrix_file, "Risk matrix document (default: sample matrix)");
  eval->add_flag("--safety", o.safety, "Safety-related system");
  auto* anomalies = draft_cmd->add_subcommand("anomalies", "Bands whose cells disagree on SL-T");
  anomalies->add_option("--matrix", o.matrix_file, "Risk matrix document")->required();

  auto* spread = app.add_subcommand("spread", "Criticality vs. risk spread");
  spread->add_option("--scheme", o.scheme, "'decade' or a scheme document");
  spread->add_flag("--series", o.series, "Emit (criticality, risk_min, risk_max) rows");

  auto* tra_cmd = app.add_subcommand("tra", "Iterative threat and risk analysis");
  tra_cmd->require_subcommand(1);
  auto* tra_eval = tra_cmd->add_subcommand("evaluate", "Place every scenario under the current vectors");
  tra_eval->add_option("--session", o.session_file, "Session document")->required();
  auto* tra_run = tra_cmd->add_subcommand("run", "Iterate until every scenario is acceptable");
  tra_run->add_option("--session", o.session_file, "Session document")->required();
  tra_run->add_option("--strategy", o.strategy, "'greedy' or 'script FILE'")->expected(1, 2);
  tra_run->add_option("--out", o.out_file, "Write the resulting session document here");
  auto* tra_min = tra_cmd->add_subcommand("minimize", "Minimal acceptable vectors for one zone");
  tra_min->add_option("--session", o.session_file, "Session document")->required();
  tra_min->add_option("--zone", o.zone, "Zone or conduit id")->required();

  auto* compare = app.add_subcommand("compare", "Draft scalar SL-T vs. required SL vectors");
  compare->add_option("--session", o.session_file, "Session document")->required();

  auto* validate = app.add_subcommand("validate", "Check zone/conduit invariants of a session document");
  validate->add_option("--session", o.session_file, "Session document")->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--addr", o.addr, "HOST:PORT")->envname("SECRISK_ADDR");
  serve->add_option("--data", o.data_dir, "Session storage directory")->envname("SECRISK_DATA");
  serve->add_option("--ui", o.ui_dir, "Static UI bundle to serve at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_draft_eval(o, out);
    if (anomalies->parsed()) return cmd_draft_anomalies(o, out);
    if (spread->parsed()) return cmd_spread(o, out);
    if (tra_eval->parsed()) return cmd_tra_evaluate(o, out);
    if (tra_run->parsed()) return cmd_tra_run(o, out);
    if (tra_min->parsed()) return cmd_tra_minimize(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
    if (serve->parsed()) return cmd_serve(o, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace secrisk::cli
