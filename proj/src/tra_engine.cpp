// SPDX-License-Identifier: Apache-2.0

#include "secrisk/tra_engine.hpp"

#include <algorithm>
#include <set>

#include "secrisk/error.hpp"
#include "secrisk/minimize.hpp"

namespace secrisk::tra {

namespace {

constexpr std::array<std::string_view, 12> kStepKeys = {
    "identify_threats",
    "identify_vulnerabilities",
    "determine_consequence_and_impact",
    "determine_unmitigated_likelihood",
    "calculate_unmitigated_risk",
    "determine_security_level_target",
    "identify_existing_countermeasures",
    "reevaluate_likelihood_and_impact",
    "calculate_residual_risk",
    "compare_with_tolerable_risk",
    "apply_additional_countermeasures",
    "document_and_communicate",
};

const LevelEffect* strongest_effect(const std::vector<LevelEffect>& effects, int level) {
  const LevelEffect* best = nullptr;
  for (const auto& e : effects) {
    if (e.level <= level && (!best || e.level > best->level)) best = &e;
  }
  return best;
}

Placements placements_of(const Evaluation& e) {
  Placements out;
  for (const auto& [id, ev] : e) out.emplace(id, ev.placement);
  return out;
}

std::string fr_list(std::span<const FoundationalRequirement> frs) {
  std::string out;
  for (auto fr : frs) {
    if (!out.empty()) out += '+';
    out += abbreviation(fr);
  }
  return out;
}

minimize::ScenarioTable tabulate(const ThreatScenario& s) {
  minimize::ScenarioTable t;
  t.likelihood = s.unmitigated.likelihood.value();
  t.impact = s.unmitigated.impact.value();
  for (std::size_t fr = 0; fr < kRequirementCount; ++fr) {
    for (int level = 0; level <= SecurityLevelVector::kMaxLevel; ++level) {
      if (const LevelEffect* e = strongest_effect(s.fr_effects[fr], level)) {
        t.likelihood_reduction[fr][static_cast<std::size_t>(level)] = e->likelihood_reduction;
        t.impact_reduction[fr][static_cast<std::size_t>(level)] = e->impact_reduction;
      }
    }
  }
  return t;
}

minimize::Problem make_problem(const RiskMatrix& matrix, int floor,
                               const std::vector<const ThreatScenario*>& scenarios) {
  minimize::Problem p;
  p.floor = floor;
  p.likelihood_classes = matrix.likelihood().size();
  for (Band b : matrix.bands()) p.acceptable_cells.push_back(b == Band::Acceptable ? 1 : 0);
  for (const ThreatScenario* s : scenarios) p.scenarios.push_back(tabulate(*s));
  return p;
}

std::vector<SecurityLevelVector> minimal_vectors(const minimize::Problem& p, ScanBackend backend) {
  const auto mask =
      backend == ScanBackend::Parallel ? minimize::scan_parallel(p) : minimize::scan_serial(p);
  std::vector<SecurityLevelVector> out;
  for (std::size_t idx : minimize::minimal_elements(mask, p.floor)) {
    out.emplace_back(minimize::decode(idx, p.floor));
  }
  return out;
}

// Non-empty FR subsets, smallest first, lexicographic within a size.
std::vector<std::vector<FoundationalRequirement>> bump_candidates(const SecurityLevelVector& v) {
  std::vector<FoundationalRequirement> open;
  for (auto fr : kAllRequirements) {
    if (v[fr] < SecurityLevelVector::kMaxLevel) open.push_back(fr);
  }
  std::vector<std::vector<FoundationalRequirement>> out;
  const std::size_t n = open.size();
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<FoundationalRequirement> subset;
      for (std::size_t k = 0; k < n; ++k) {
        if (pick[k]) subset.push_back(open[k]);
      }
      out.push_back(std::move(subset));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

SecurityLevelVector bumped(const SecurityLevelVector& v, std::span<const FoundationalRequirement> frs) {
  SecurityLevelVector out = v;
  for (auto fr : frs) {
    if (out[fr] >= SecurityLevelVector::kMaxLevel) {
      throw DomainError("SL cap reached for " + std::string(abbreviation(fr)));
    }
    out = out.with(fr, out[fr] + 1);
  }
  return out;
}

std::vector<std::string> unacceptable_in_order(const AssessmentSession& session, const Evaluation& e) {
  std::vector<std::string> out;
  for (const auto& s : session.scenarios) {
    if (!e.at(s.id).acceptable) out.push_back(s.id);
  }
  return out;
}

IterationOutcome finish(OutcomeKind kind_if_residual, AssessmentSession session, int iterations) {
  IterationOutcome out;
  out.evaluation = evaluate_session(session);
  out.residual = unacceptable_in_order(session, out.evaluation);
  out.kind = out.residual.empty() ? OutcomeKind::Converged : kind_if_residual;
  out.session = std::move(session);
  out.iterations = iterations;
  return out;
}

IterationOutcome run_greedy(AssessmentSession session) {
  int iterations = 0;
  for (;;) {
    const Evaluation eval = evaluate_session(session);

    std::vector<const ThreatScenario*> targets;
    for (const auto& s : session.scenarios) {
      if (!eval.at(s.id).acceptable) targets.push_back(&s);
    }
    if (targets.empty()) break;
    std::stable_sort(targets.begin(), targets.end(), [&](const auto* a, const auto* b) {
      return severity(eval.at(a->id).band) > severity(eval.at(b->id).band);
    });

    bool progressed = false;
    for (const ThreatScenario* target : targets) {
      const SecurityLevelVector& v = session.vector_for(target->segment);
      const ScenarioEvaluation& now = eval.at(target->id);
      const auto candidates = bump_candidates(v);

      const std::vector<FoundationalRequirement>* chosen = nullptr;
      for (const auto& c : candidates) {
        const Cell p = residual_placement(*target, bumped(v, c));
        if (severity(session.matrix.band(p)) < severity(now.band)) {
          chosen = &c;
          break;
        }
      }
      if (!chosen) {
        for (const auto& c : candidates) {
          const Cell p = residual_placement(*target, bumped(v, c));
          if (placement_leq(p, now.placement) && p != now.placement) {
            chosen = &c;
            break;
          }
        }
      }
      if (!chosen) continue;

      session = apply_and_reevaluate(session, target->segment, bumped(v, *chosen),
                                     ProcessStep::ApplyAdditionalCountermeasures,
                                     "greedy: raise " + fr_list(*chosen) + " of " + target->segment +
                                         " for scenario " + target->id)
                    .session;
      ++iterations;
      progressed = true;
      break;
    }
    if (!progressed) break;
  }
  return finish(OutcomeKind::CapReached, std::move(session), iterations);
}

IterationOutcome run_script(AssessmentSession session, const ScriptStrategy& script) {
  int iterations = 0;
  for (const ScriptAction& a : script.actions) {
    SecurityLevelVector v;
    std::string action;
    if (a.vector) {
      v = *a.vector;
      action = "script: set " + a.segment + " to " + to_string(v);
    } else {
      v = propose_bump(session, a.segment, a.bump);
      action = "script: raise " + fr_list(a.bump) + " of " + a.segment;
    }
    session = apply_and_reevaluate(session, a.segment, v, ProcessStep::ApplyAdditionalCountermeasures,
                                   std::move(action))
                  .session;
    ++iterations;
  }
  return finish(OutcomeKind::ScriptExhausted, std::move(session), iterations);
}

}  // namespace

std::string_view key(ProcessStep step) {
  return kStepKeys[static_cast<std::size_t>(step) - 1];
}

ProcessStep parse_process_step(std::string_view text) {
  for (std::size_t i = 0; i < kStepKeys.size(); ++i) {
    if (kStepKeys[i] == text) return static_cast<ProcessStep>(i + 1);
  }
  throw DomainError("unknown process step '" + std::string(text) + "'");
}

std::string_view key(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Converged: return "converged";
    case OutcomeKind::CapReached: return "cap_reached";
    case OutcomeKind::ScriptExhausted: return "script_exhausted";
  }
  return "converged";
}

const SecurityLevelVector& AssessmentSession::vector_for(const std::string& segment) const {
  auto it = sl_assignment.find(segment);
  if (it == sl_assignment.end()) {
    throw DomainError("unknown zone or conduit '" + segment + "'");
  }
  return it->second;
}

std::vector<std::string> scenario_findings(const ThreatScenario& s, const RiskMatrix& matrix) {
  std::vector<std::string> out;
  const std::string where = "scenario '" + s.id + "'";
  if (s.id.empty()) out.push_back("scenario with empty id");
  if (!matrix.contains(s.unmitigated)) out.push_back(where + ": unmitigated placement outside the matrix");
  const int max_l = matrix.likelihood().size() - 1;
  const int max_i = matrix.impact().size() - 1;
  for (auto fr : kAllRequirements) {
    const auto& effects = s.effects(fr);
    const std::string fw = where + " " + std::string(abbreviation(fr));
    for (std::size_t k = 0; k < effects.size(); ++k) {
      const auto& e = effects[k];
      if (e.level < 1 || e.level > SecurityLevelVector::kMaxLevel) {
        out.push_back(fw + ": effect level " + std::to_string(e.level) + " outside 1..4");
      }
      if (e.likelihood_reduction < 0 || e.likelihood_reduction > max_l || e.impact_reduction < 0 ||
          e.impact_reduction > max_i) {
        out.push_back(fw + ": reduction out of range at level " + std::to_string(e.level));
      }
      if (k > 0) {
        const auto& prev = effects[k - 1];
        if (e.level <= prev.level) {
          out.push_back(fw + ": effect levels must be strictly increasing");
        } else if (e.likelihood_reduction < prev.likelihood_reduction ||
                   e.impact_reduction < prev.impact_reduction) {
          out.push_back(fw + ": level " + std::to_string(e.level) + " reduces less than level " +
                        std::to_string(prev.level));
        }
      }
    }
  }
  return out;
}

std::vector<std::string> session_findings(const AssessmentSession& session) {
  std::vector<std::string> out;
  for (const auto& f : validate_architecture(session.architecture).findings) out.push_back(f.message);

  for (const auto& seg : session.architecture.segment_ids()) {
    if (!session.sl_assignment.count(seg)) out.push_back("no SL vector assigned to '" + seg + "'");
  }
  for (const auto& [seg, v] : session.sl_assignment) {
    if (!session.architecture.has_segment(seg)) {
      out.push_back("SL vector assigned to unknown zone or conduit '" + seg + "'");
    }
    if (session.safety_floor && v.min_level() < 1) {
      out.push_back("vector " + to_string(v) + " of '" + seg + "' violates the safety floor");
    }
  }

  std::set<std::string> ids;
  for (const auto& s : session.scenarios) {
    if (!ids.insert(s.id).second) out.push_back("scenario id '" + s.id + "' is used twice");
    if (!session.architecture.has_segment(s.segment)) {
      out.push_back("scenario '" + s.id + "' references unknown zone or conduit '" + s.segment + "'");
    }
    auto more = scenario_findings(s, session.matrix);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

void validate_session(const AssessmentSession& session) {
  auto findings = session_findings(session);
  if (!findings.empty()) throw ValidationError(std::move(findings));
}

Cell residual_placement(const ThreatScenario& s, const SecurityLevelVector& v) {
  int dl = 0;
  int di = 0;
  for (auto fr : kAllRequirements) {
    if (const LevelEffect* e = strongest_effect(s.effects(fr), v[fr])) {
      dl += e->likelihood_reduction;
      di += e->impact_reduction;
    }
  }
  return Cell{Rank(std::max(1, s.unmitigated.likelihood.value() - dl)),
              Rank(std::max(1, s.unmitigated.impact.value() - di))};
}

Evaluation evaluate_session(const AssessmentSession& session) {
  Evaluation out;
  for (const auto& s : session.scenarios) {
    const Cell p = residual_placement(s, session.vector_for(s.segment));
    const Band b = session.matrix.band(p);
    out.emplace(s.id, ScenarioEvaluation{p, b, b == Band::Acceptable});
  }
  return out;
}

SecurityLevelVector propose_bump(const AssessmentSession& session, const std::string& segment,
                                 std::span<const FoundationalRequirement> frs) {
  std::set<FoundationalRequirement> unique(frs.begin(), frs.end());
  std::vector<FoundationalRequirement> ordered(unique.begin(), unique.end());
  return bumped(session.vector_for(segment), ordered);
}

ApplyResult apply_and_reevaluate(const AssessmentSession& session, const std::string& segment,
                                 const SecurityLevelVector& v, ProcessStep step, std::string action) {
  const SecurityLevelVector before = session.vector_for(segment);
  if (session.safety_floor && v.min_level() < 1) {
    throw DomainError("vector " + to_string(v) + " violates the safety floor (every FR >= 1)");
  }
  if (v.kind() != SlKind::Target) {
    throw DomainError("only target vectors can be assigned to a zone or conduit");
  }

  ApplyResult out{session, {}};
  const Evaluation eval_before = evaluate_session(session);
  out.session.sl_assignment[segment] = v;
  out.evaluation = evaluate_session(out.session);

  IterationRecord rec;
  rec.step = step;
  rec.action = action.empty() ? "set " + segment + " to " + to_string(v) : std::move(action);
  rec.segment = segment;
  rec.sl_before = before;
  rec.sl_after = v;
  rec.placements_before = placements_of(eval_before);
  rec.placements_after = placements_of(out.evaluation);
  out.session.history.push_back(std::move(rec));
  return out;
}

IterationOutcome iterate_until_acceptable(const AssessmentSession& session, const Strategy& strategy) {
  if (const auto* script = std::get_if<ScriptStrategy>(&strategy)) {
    return run_script(session, *script);
  }
  return run_greedy(session);
}

std::vector<SecurityLevelVector> auto_minimize(const AssessmentSession& session,
                                               const std::string& segment, ScanBackend backend) {
  if (!session.architecture.has_segment(segment)) {
    throw DomainError("unknown zone or conduit '" + segment + "'");
  }
  std::vector<const ThreatScenario*> attached;
  for (const auto& s : session.scenarios) {
    if (s.segment == segment) attached.push_back(&s);
  }
  return minimal_vectors(make_problem(session.matrix, session.floor_level(), attached), backend);
}

std::vector<ScenarioComparison> compare_with_draft(const AssessmentSession& session) {
  std::vector<ScenarioComparison> out;
  const int floor = session.floor_level();
  for (const auto& s : session.scenarios) {
    ScenarioComparison c;
    c.scenario = s.id;
    c.segment = s.segment;
    c.draft = draft::evaluate_draft(s.unmitigated, session.matrix, session.safety_floor);

    for (const auto& v : minimal_vectors(make_problem(session.matrix, floor, {&s}), ScanBackend::Serial)) {
      RequiredVector r{v, {}, {}};
      for (auto fr : kAllRequirements) {
        if (c.draft.sl_t < v[fr]) r.undershoot.push_back(fr);
        if (c.draft.sl_t > v[fr]) r.overshoot.push_back(fr);
      }
      c.undershoot = c.undershoot || !r.undershoot.empty();
      c.overshoot = c.overshoot || !r.overshoot.empty();
      c.required.push_back(std::move(r));
    }
    c.unfixable = c.required.empty();
    c.scalar_vector = SecurityLevelVector::uniform(std::max(c.draft.sl_t, floor));
    c.scalar_vector_acceptable =
        session.matrix.band(residual_placement(s, c.scalar_vector)) == Band::Acceptable;
    out.push_back(std::move(c));
  }
  return out;
}

AssessmentSession replay_history(const AssessmentSession& initial,
                                 std::span<const IterationRecord> history) {
  AssessmentSession s = initial;
  s.history.clear();
  for (const auto& rec : history) {
    s = apply_and_reevaluate(s, rec.segment, rec.sl_after, rec.step, rec.action).session;
  }
  return s;
}

}  // namespace secrisk::tra
