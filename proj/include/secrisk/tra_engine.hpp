// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_TRA_ENGINE_HPP
#define SECRISK_TRA_ENGINE_HPP

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "secrisk/core_model.hpp"
#include "secrisk/draft_method.hpp"

namespace secrisk::tra {

// Effect of reaching `level` on one foundational requirement: the scenario
// is moved down this many classes on each scale.
struct LevelEffect {
  int level = 1;
  int likelihood_reduction = 0;
  int impact_reduction = 0;
  friend bool operator==(const LevelEffect&, const LevelEffect&) = default;
};

using EffectTable = std::array<std::vector<LevelEffect>, kRequirementCount>;

struct ThreatScenario {
  std::string id;
  std::string description;
  // Zone or conduit the scenario is attached to.
  std::string segment;
  Cell unmitigated{Rank(1), Rank(1)};
  // Per FR, sorted by level.
  EffectTable fr_effects;

  const std::vector<LevelEffect>& effects(FoundationalRequirement fr) const {
    return fr_effects[static_cast<std::size_t>(fr)];
  }
  friend bool operator==(const ThreatScenario&, const ThreatScenario&) = default;
};

// The twelve steps of the draft process, used to tag audit records.
enum class ProcessStep {
  IdentifyThreats = 1,
  IdentifyVulnerabilities,
  DetermineConsequenceAndImpact,
  DetermineUnmitigatedLikelihood,
  CalculateUnmitigatedRisk,
  DetermineSecurityLevelTarget,
  IdentifyExistingCountermeasures,
  ReevaluateLikelihoodAndImpact,
  CalculateResidualRisk,
  CompareWithTolerableRisk,
  ApplyAdditionalCountermeasures,
  DocumentAndCommunicate,
};

std::string_view key(ProcessStep step);
ProcessStep parse_process_step(std::string_view text);

using Placements = std::map<std::string, Cell>;

struct IterationRecord {
  ProcessStep step = ProcessStep::ApplyAdditionalCountermeasures;
  std::string action;
  std::string segment;
  SecurityLevelVector sl_before;
  SecurityLevelVector sl_after;
  Placements placements_before;
  Placements placements_after;
  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct AssessmentSession {
  std::string id;
  Architecture architecture;
  RiskMatrix matrix = sample_risk_matrix();
  std::vector<ThreatScenario> scenarios;
  std::map<std::string, SecurityLevelVector> sl_assignment;
  bool safety_floor = true;
  std::vector<IterationRecord> history;

  int floor_level() const { return safety_floor ? 1 : 0; }
  const SecurityLevelVector& vector_for(const std::string& segment) const;
  friend bool operator==(const AssessmentSession&, const AssessmentSession&) = default;
};

std::vector<std::string> scenario_findings(const ThreatScenario& s, const RiskMatrix& matrix);
std::vector<std::string> session_findings(const AssessmentSession& session);
// Throws ValidationError listing every finding.
void validate_session(const AssessmentSession& session);

struct ScenarioEvaluation {
  Cell placement{Rank(1), Rank(1)};
  Band band = Band::Acceptable;
  bool acceptable = true;
  friend bool operator==(const ScenarioEvaluation&, const ScenarioEvaluation&) = default;
};

using Evaluation = std::map<std::string, ScenarioEvaluation>;

// For each FR the strongest effect at or below v[FR] applies; reductions
// add up across FRs and each rank stops at 1.
Cell residual_placement(const ThreatScenario& s, const SecurityLevelVector& v);

Evaluation evaluate_session(const AssessmentSession& session);

// Preview only: the segment's vector with each listed FR raised by one.
SecurityLevelVector propose_bump(const AssessmentSession& session, const std::string& segment,
                                 std::span<const FoundationalRequirement> frs);

struct ApplyResult {
  AssessmentSession session;
  Evaluation evaluation;
};

ApplyResult apply_and_reevaluate(const AssessmentSession& session, const std::string& segment,
                                 const SecurityLevelVector& v,
                                 ProcessStep step = ProcessStep::ApplyAdditionalCountermeasures,
                                 std::string action = {});

struct GreedyStrategy {};

struct ScriptAction {
  std::string segment;
  // Exactly one of the two is used: an explicit vector wins over a bump.
  std::optional<SecurityLevelVector> vector;
  std::vector<FoundationalRequirement> bump;
};

struct ScriptStrategy {
  std::vector<ScriptAction> actions;
};

using Strategy = std::variant<GreedyStrategy, ScriptStrategy>;

enum class OutcomeKind { Converged, CapReached, ScriptExhausted };

std::string_view key(OutcomeKind kind);

struct IterationOutcome {
  OutcomeKind kind = OutcomeKind::Converged;
  AssessmentSession session;
  Evaluation evaluation;
  // Scenarios still unacceptable, in session order.
  std::vector<std::string> residual;
  int iterations = 0;
};

IterationOutcome iterate_until_acceptable(const AssessmentSession& session, const Strategy& strategy);

enum class ScanBackend { Serial, Parallel };

// Minimal antichain of acceptable vectors for one zone/conduit, sorted
// lexicographically (IAC most significant). Empty when nothing works.
std::vector<SecurityLevelVector> auto_minimize(const AssessmentSession& session,
                                               const std::string& segment,
                                               ScanBackend backend = ScanBackend::Parallel);

struct RequiredVector {
  SecurityLevelVector vector;
  // FRs where the scalar is below / above the required component.
  std::vector<FoundationalRequirement> undershoot;
  std::vector<FoundationalRequirement> overshoot;
};

struct ScenarioComparison {
  std::string scenario;
  std::string segment;
  draft::DraftResult draft;
  // Minimal vectors making this scenario alone acceptable.
  std::vector<RequiredVector> required;
  bool undershoot = false;
  bool overshoot = false;
  bool unfixable = false;
  // The scalar replicated over every FR (raised to the safety floor).
  SecurityLevelVector scalar_vector;
  bool scalar_vector_acceptable = false;
};

std::vector<ScenarioComparison> compare_with_draft(const AssessmentSession& session);

// Re-applies every recorded action to `initial` (whose history is ignored).
AssessmentSession replay_history(const AssessmentSession& initial,
                                 std::span<const IterationRecord> history);

}  // namespace secrisk::tra

#endif  // SECRISK_TRA_ENGINE_HPP
