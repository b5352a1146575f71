// SPDX-License-Identifier: Apache-2.0

#include "secrisk/draft_method.hpp"

#include <algorithm>
#include <map>

#include "secrisk/error.hpp"

namespace secrisk::draft {

std::string_view key(WarningCode code) {
  switch (code) {
    case WarningCode::OrdinalArithmetic: return "ordinal_arithmetic";
    case WarningCode::ZeroSlForSafety: return "zero_sl_for_safety";
    case WarningCode::BandAnomaly: return "band_anomaly";
    case WarningCode::ScalarForVector: return "scalar_for_vector";
  }
  return "ordinal_arithmetic";
}

bool DraftResult::has_warning(WarningCode code) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [code](const Warning& w) { return w.code == code; });
}

std::int64_t risk_product(int likelihood, int impact) {
  if (likelihood < 1 || likelihood > 5 || impact < 1 || impact > 5) {
    throw DomainError("ranks (" + std::to_string(likelihood) + "," + std::to_string(impact) +
                      ") outside the 5-point scales");
  }
  return static_cast<std::int64_t>(likelihood) * impact;
}

std::int64_t risk_product(const RiskMatrix& matrix, const Cell& cell) {
  if (!matrix.contains(cell)) {
    throw DomainError("ranks (" + std::to_string(cell.likelihood.value()) + "," +
                      std::to_string(cell.impact.value()) + ") outside the matrix scales");
  }
  return static_cast<std::int64_t>(cell.likelihood.value()) * cell.impact.value();
}

Rational crrf(const Rational& risk, const Rational& tolerable) {
  if (risk <= 0 || tolerable <= 0) {
    throw DomainError("risk and tolerable risk must be positive");
  }
  return risk / tolerable;
}

int sl_t_scalar(const Rational& risk, const Rational& tolerable) {
  const BigInt level = floor(crrf(risk, tolerable) - Rational(1, 4));
  if (level < 0) return 0;
  if (level > 4) return 4;
  return level.convert_to<int>();
}

DraftResult evaluate_draft(const Cell& cell, const RiskMatrix& matrix, bool safety_related,
                           std::optional<Rational> tolerable_override) {
  DraftResult out{cell, Rational(risk_product(matrix, cell)),
                  tolerable_override.value_or(matrix.tolerable_risk()), false, 0, 0, {}};
  out.tolerable_risk_justified = out.tolerable_risk != kDefaultTolerableRisk;
  out.crrf = crrf(out.risk, out.tolerable_risk);
  out.sl_t = sl_t_scalar(out.risk, out.tolerable_risk);

  out.warnings.push_back(
      {WarningCode::OrdinalArithmetic,
       "risk " + to_string(out.risk) + " = " + matrix.likelihood().label(cell.likelihood) + " x " +
           matrix.impact().label(cell.impact) +
           " multiplies ordinal class ranks; product and quotient are undefined on ordinal data",
       std::nullopt, {}, {}});
  out.warnings.push_back(
      {WarningCode::ScalarForVector,
       "a single scalar SL-T " + std::to_string(out.sl_t) +
           " is derived where a 7-component SL vector (IAC..RA) is required",
       std::nullopt, {}, {}});
  if (safety_related && out.sl_t == 0) {
    out.warnings.push_back(
        {WarningCode::ZeroSlForSafety,
         "SL-T 0 offers no protection against casual or coincidental violation; "
         "not admissible for a safety-related system",
         std::nullopt, {}, {}});
  }
  return out;
}

std::vector<Warning> find_band_anomalies(const RiskMatrix& matrix) {
  std::vector<Warning> out;
  for (Band band : {Band::Acceptable, Band::Tolerable, Band::Unacceptable}) {
    // First cell (canonical order) reaching each SL-T value.
    std::map<int, Cell> representative;
    for (const Cell& c : matrix.cells()) {
      if (matrix.band(c) != band) continue;
      const int level = sl_t_scalar(Rational(risk_product(matrix, c)), matrix.tolerable_risk());
      representative.try_emplace(level, c);
    }
    if (representative.size() < 2) continue;

    Warning w{WarningCode::BandAnomaly, {}, band, {}, {}};
    for (const auto& [level, cell] : representative) w.sl_t_values.push_back(level);
    for (auto it = representative.begin(); std::next(it) != representative.end(); ++it) {
      w.witness_pairs.emplace_back(it->second, std::next(it)->second);
    }
    w.message = "cells of band '" + std::string(key(band)) + "' map to " +
                std::to_string(w.sl_t_values.size()) + " different scalar SL-T values";
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace secrisk::draft
