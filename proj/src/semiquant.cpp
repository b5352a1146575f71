// SPDX-License-Identifier: Apache-2.0

#include "secrisk/semiquant.hpp"

#include <algorithm>

#include "secrisk/error.hpp"

namespace secrisk::semiquant {

namespace {

void validate_classes(const std::string& scale, SchemeMode mode,
                      const std::vector<ClassValue>& classes, std::vector<std::string>& findings) {
  if (classes.size() < 2) {
    findings.push_back(scale + ": needs at least two classes");
    return;
  }
  if (classes.front().lo <= 0) {
    findings.push_back(scale + ": lowest class must start above 0");
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    const std::string where = scale + " class " + std::to_string(k + 1);
    if (mode == SchemeMode::Points) {
      if (c.lo != c.hi) findings.push_back(where + ": point classes need lo == hi");
      if (k + 1 < classes.size() && !(c.lo < classes[k + 1].lo)) {
        findings.push_back(where + ": points must be strictly increasing");
      }
    } else {
      if (!(c.lo < c.hi)) findings.push_back(where + ": interval must satisfy lo < hi");
      if (k + 1 < classes.size() && c.hi != classes[k + 1].lo) {
        findings.push_back(where + ": intervals must be contiguous");
      }
    }
  }
}

Rational midpoint(const RiskInterval& r) { return (r.lo + r.hi) / 2; }

Rational ratio(const Rational& x, const Rational& y) {
  return x > y ? Rational(x / y) : Rational(y / x);
}

bool overlaps(const RiskInterval& x, const RiskInterval& y, SchemeMode mode) {
  if (mode == SchemeMode::Points) return x.lo == y.lo;
  return x.lo < y.hi && y.lo < x.hi;
}

}  // namespace

std::string_view key(SchemeMode mode) {
  return mode == SchemeMode::Points ? "points" : "intervals";
}

ClassIntervalScheme::ClassIntervalScheme(std::string name, SchemeMode mode,
                                         std::vector<ClassValue> likelihood,
                                         std::vector<ClassValue> impact)
    : name_(std::move(name)), mode_(mode), likelihood_(std::move(likelihood)), impact_(std::move(impact)) {
  std::vector<std::string> findings;
  validate_classes("likelihood", mode_, likelihood_, findings);
  validate_classes("impact", mode_, impact_, findings);
  if (!findings.empty()) throw ValidationError(std::move(findings));
}

ClassIntervalScheme decade_scheme(int classes) {
  std::vector<ClassValue> v;
  Rational lo = 1;
  for (int k = 0; k < classes; ++k) {
    v.push_back({lo, lo * 10});
    lo *= 10;
  }
  return ClassIntervalScheme("decade", SchemeMode::Intervals, v, v);
}

ClassIntervalScheme rank_point_scheme(int classes) {
  std::vector<ClassValue> v;
  for (int k = 1; k <= classes; ++k) v.push_back({Rational(k), Rational(k)});
  return ClassIntervalScheme("rank-points", SchemeMode::Points, v, v);
}

std::int64_t criticality(int likelihood, int impact) {
  if (likelihood < 1 || impact < 1) {
    throw DomainError("ranks must be at least 1");
  }
  return static_cast<std::int64_t>(likelihood) * impact;
}

RiskInterval risk_bounds(const ClassIntervalScheme& scheme, const Cell& cell) {
  const int l = cell.likelihood.value();
  const int i = cell.impact.value();
  if (l > scheme.likelihood_classes() || i > scheme.impact_classes()) {
    throw DomainError("cell outside scheme '" + scheme.name() + "'");
  }
  const ClassValue& f = scheme.likelihood()[static_cast<std::size_t>(l - 1)];
  const ClassValue& m = scheme.impact()[static_cast<std::size_t>(i - 1)];
  return {f.lo * m.lo, f.hi * m.hi};
}

SpreadReport spread_analysis(const ClassIntervalScheme& scheme) {
  SpreadReport report;
  for (int l = 1; l <= scheme.likelihood_classes(); ++l) {
    for (int i = 1; i <= scheme.impact_classes(); ++i) {
      const Cell cell{Rank(l), Rank(i)};
      const RiskInterval r = risk_bounds(scheme, cell);
      const std::int64_t crit = criticality(l, i);
      auto [it, fresh] = report.per_criticality.try_emplace(crit);
      CriticalityGroup& g = it->second;
      if (fresh) {
        g.criticality = crit;
        g.risk_min = r.lo;
        g.risk_max = r.hi;
        g.min_cell = cell;
        g.max_cell = cell;
      } else {
        if (r.lo < g.risk_min) {
          g.risk_min = r.lo;
          g.min_cell = cell;
        }
        if (r.hi > g.risk_max) {
          g.risk_max = r.hi;
          g.max_cell = cell;
        }
      }
      g.cells.push_back(cell);
    }
  }

  for (auto& [crit, g] : report.per_criticality) {
    g.spread_ratio = g.risk_max / g.risk_min;
    if (g.cells.size() < 2) continue;
    if (report.witnesses.empty() || g.spread_ratio > report.global_max_spread) {
      report.global_max_spread = g.spread_ratio;
      report.witnesses.assign(1, Witness{crit, g.min_cell, g.max_cell});
    } else if (g.spread_ratio == report.global_max_spread) {
      report.witnesses.push_back(Witness{crit, g.min_cell, g.max_cell});
    }
  }
  return report;
}

RequirementViolations requirement_counterexamples(const ClassIntervalScheme& scheme,
                                                  const RiskMatrix& matrix,
                                                  const SimilarityOptions& options) {
  if (scheme.likelihood_classes() != matrix.likelihood().size() ||
      scheme.impact_classes() != matrix.impact().size()) {
    throw DomainError("scheme '" + scheme.name() + "' does not match the matrix dimensions");
  }
  if (options.factor < 1) {
    throw DomainError("similarity factor must be at least 1");
  }

  const std::vector<Cell> cells = matrix.cells();
  std::vector<RiskInterval> bounds;
  bounds.reserve(cells.size());
  for (const Cell& c : cells) bounds.push_back(risk_bounds(scheme, c));

  RequirementViolations out;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const auto crit_a = criticality(cells[a].likelihood.value(), cells[a].impact.value());
      const auto crit_b = criticality(cells[b].likelihood.value(), cells[b].impact.value());
      const RiskInterval& ra = bounds[a];
      const RiskInterval& rb = bounds[b];
      if (crit_a != crit_b) {
        const bool similar =
            overlaps(ra, rb, scheme.mode()) ||
            (options.midpoint_fallback && ratio(midpoint(ra), midpoint(rb)) <= options.factor);
        if (similar) out.req1.push_back({cells[a], cells[b]});
      } else if (ratio(ra.lo, rb.lo) > options.factor || ratio(ra.hi, rb.hi) > options.factor) {
        out.req2.push_back({cells[a], cells[b]});
      }
    }
  }
  return out;
}

}  // namespace secrisk::semiquant
