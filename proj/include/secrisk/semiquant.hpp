// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_SEMIQUANT_HPP
#define SECRISK_SEMIQUANT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "secrisk/core_model.hpp"
#include "secrisk/rational.hpp"

namespace secrisk::semiquant {

// A class enriched with numbers. Interval mode: half-open [lo, hi).
// Point mode: lo == hi, the class is read as a single representative value.
struct ClassValue {
  Rational lo;
  Rational hi;
  friend bool operator==(const ClassValue&, const ClassValue&) = default;
};

enum class SchemeMode { Intervals, Points };

std::string_view key(SchemeMode mode);

class ClassIntervalScheme {
 public:
  // likelihood: event frequency per class; impact: loss magnitude per class.
  ClassIntervalScheme(std::string name, SchemeMode mode, std::vector<ClassValue> likelihood,
                      std::vector<ClassValue> impact);

  const std::string& name() const noexcept { return name_; }
  SchemeMode mode() const noexcept { return mode_; }
  const std::vector<ClassValue>& likelihood() const noexcept { return likelihood_; }
  const std::vector<ClassValue>& impact() const noexcept { return impact_; }
  int likelihood_classes() const noexcept { return static_cast<int>(likelihood_.size()); }
  int impact_classes() const noexcept { return static_cast<int>(impact_.size()); }

  friend bool operator==(const ClassIntervalScheme&, const ClassIntervalScheme&) = default;

 private:
  std::string name_;
  SchemeMode mode_;
  std::vector<ClassValue> likelihood_;
  std::vector<ClassValue> impact_;
};

// Class k spans [10^(k-1), 10^k) on both scales.
ClassIntervalScheme decade_scheme(int classes = 5);
// Class k is the single value k on both scales.
ClassIntervalScheme rank_point_scheme(int classes = 5);

// Risk range of a cell. Interval mode: [lo, hi) where hi is a supremum.
// Point mode: lo == hi.
struct RiskInterval {
  Rational lo;
  Rational hi;
  friend bool operator==(const RiskInterval&, const RiskInterval&) = default;
};

std::int64_t criticality(int likelihood, int impact);

RiskInterval risk_bounds(const ClassIntervalScheme& scheme, const Cell& cell);

struct CriticalityGroup {
  std::int64_t criticality = 0;
  std::vector<Cell> cells;
  Rational risk_min;
  Rational risk_max;
  Rational spread_ratio;
  Cell min_cell{Rank(1), Rank(1)};  // first cell attaining risk_min
  Cell max_cell{Rank(1), Rank(1)};  // first cell attaining risk_max
  friend bool operator==(const CriticalityGroup&, const CriticalityGroup&) = default;
};

struct Witness {
  std::int64_t criticality = 0;
  Cell low{Rank(1), Rank(1)};
  Cell high{Rank(1), Rank(1)};
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SpreadReport {
  std::map<std::int64_t, CriticalityGroup> per_criticality;
  // Max spread over groups with at least two cells; 1 when there is none.
  Rational global_max_spread{1};
  std::vector<Witness> witnesses;
  friend bool operator==(const SpreadReport&, const SpreadReport&) = default;
};

SpreadReport spread_analysis(const ClassIntervalScheme& scheme);

struct CellPair {
  Cell a{Rank(1), Rank(1)};
  Cell b{Rank(1), Rank(1)};
  friend auto operator<=>(const CellPair&, const CellPair&) = default;
};

struct SimilarityOptions {
  Rational factor{2};
  bool midpoint_fallback = true;
};

struct RequirementViolations {
  // Similar risk, different criticality.
  std::vector<CellPair> req1;
  // Same criticality, risk bounds more than `factor` apart.
  std::vector<CellPair> req2;
};

RequirementViolations requirement_counterexamples(const ClassIntervalScheme& scheme,
                                                  const RiskMatrix& matrix,
                                                  const SimilarityOptions& options = {});

}  // namespace secrisk::semiquant

#endif  // SECRISK_SEMIQUANT_HPP
