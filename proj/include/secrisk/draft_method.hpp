// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_DRAFT_METHOD_HPP
#define SECRISK_DRAFT_METHOD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secrisk/core_model.hpp"
#include "secrisk/rational.hpp"

/// Reference implementation of the draft scalar SL-T derivation
/// (risk = likelihood rank x impact rank, CRRF = risk / tolerable,
/// SL-T = min(4, floor(CRRF - 1/4)) clamped at 0) together with the
/// diagnostics that expose its defects. Nothing here "fixes" the formula.
namespace secrisk::draft {

enum class WarningCode { OrdinalArithmetic, ZeroSlForSafety, BandAnomaly, ScalarForVector };

std::string_view key(WarningCode code);

struct Warning {
  WarningCode code;
  std::string message;
  // BandAnomaly only.
  std::optional<Band> band;
  std::vector<int> sl_t_values;
  std::vector<std::pair<Cell, Cell>> witness_pairs;
};

struct DraftResult {
  Cell cell{Rank(1), Rank(1)};
  Rational risk;
  Rational tolerable_risk;
  // False when the tolerable risk is the stipulated default of 4.
  bool tolerable_risk_justified = false;
  Rational crrf;
  int sl_t = 0;
  std::vector<Warning> warnings;

  bool has_warning(WarningCode code) const;
};

inline const Rational kDefaultTolerableRisk{4};

/// Criticality number of a cell of the 5x5 sample matrix. Throws
/// DomainError for ranks outside 1..5.
std::int64_t risk_product(int likelihood, int impact);
/// Same, validated against an arbitrary matrix's scales.
std::int64_t risk_product(const RiskMatrix& matrix, const Cell& cell);

Rational crrf(const Rational& risk, const Rational& tolerable = kDefaultTolerableRisk);

int sl_t_scalar(const Rational& risk, const Rational& tolerable = kDefaultTolerableRisk);

/// Always warns OrdinalArithmetic and ScalarForVector; adds
/// ZeroSlForSafety when safety_related and the scalar is 0.
DraftResult evaluate_draft(const Cell& cell, const RiskMatrix& matrix, bool safety_related,
                           std::optional<Rational> tolerable_override = std::nullopt);

/// One BandAnomaly per band whose cells disagree on the scalar SL-T.
std::vector<Warning> find_band_anomalies(const RiskMatrix& matrix);

}  // namespace secrisk::draft

#endif  // SECRISK_DRAFT_METHOD_HPP
