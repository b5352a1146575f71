// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_CODEC_HPP
#define SECRISK_CODEC_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "secrisk/core_model.hpp"
#include "secrisk/draft_method.hpp"
#include "secrisk/semiquant.hpp"
#include "secrisk/tra_engine.hpp"

// Canonical document encoding shared by files, the CLI and the HTTP API.
// Object keys are sorted, so equal values always produce equal bytes.
// Decoders throw DomainError (or ValidationError) on malformed input.
namespace secrisk::codec {

using json = nlohmann::json;

// The one serialization used for every output: 2-space indent, trailing newline.
std::string to_text(const json& doc);
json parse_text(const std::string& text);
json read_file(const std::string& path);

json encode(const Rational& q);
Rational decode_rational(const json& j);

json encode(const SecurityLevelVector& v);
SecurityLevelVector decode_vector(const json& j);

json encode(const OrdinalScale& scale);
OrdinalScale decode_scale(const json& j);

json encode(const RiskMatrix& m);
RiskMatrix decode_matrix(const json& j);

json encode(const Cell& c, const RiskMatrix& m);
Cell decode_cell(const json& j, const RiskMatrix& m);

json encode(const Architecture& a);
Architecture decode_architecture(const json& j);
json encode(const ValidationReport& r);

json encode(const tra::ThreatScenario& s, const RiskMatrix& m);
tra::ThreatScenario decode_scenario(const json& j, const RiskMatrix& m);

json encode(const tra::AssessmentSession& s);
// Also validates every session invariant.
tra::AssessmentSession decode_session(const json& j);

json encode(const tra::Evaluation& e, const RiskMatrix& m);
json encode(const tra::IterationRecord& r, const RiskMatrix& m);
json encode_history(const tra::AssessmentSession& s);
json encode(const tra::IterationOutcome& o);
json encode_minimal(const std::string& segment, const std::vector<SecurityLevelVector>& vectors);
json encode(const std::vector<tra::ScenarioComparison>& report, const RiskMatrix& m);

json encode(const draft::Warning& w, const RiskMatrix& m);
json encode(const draft::DraftResult& r, const RiskMatrix& m);
json encode_anomalies(const std::vector<draft::Warning>& anomalies, const RiskMatrix& m);

json encode(const semiquant::ClassIntervalScheme& s);
semiquant::ClassIntervalScheme decode_scheme(const json& j);
json encode(const semiquant::SpreadReport& r);
// (criticality, risk_min, risk_max) rows for external plotting.
json encode_series(const semiquant::SpreadReport& r);
json encode(const semiquant::RequirementViolations& v);

tra::ScriptStrategy decode_script(const json& j);

}  // namespace secrisk::codec

#endif  // SECRISK_CODEC_HPP
