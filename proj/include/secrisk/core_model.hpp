// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_CORE_MODEL_HPP
#define SECRISK_CORE_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secrisk/rational.hpp"

namespace secrisk {

// The seven foundational requirements in canonical order. The enumerator
// value is the index of the matching SL-vector component.
enum class FoundationalRequirement : std::uint8_t { IAC, UC, SI, DC, RDF, TRE, RA };

inline constexpr std::size_t kRequirementCount = 7;

inline constexpr std::array<FoundationalRequirement, kRequirementCount> kAllRequirements = {
    FoundationalRequirement::IAC, FoundationalRequirement::UC,  FoundationalRequirement::SI,
    FoundationalRequirement::DC,  FoundationalRequirement::RDF, FoundationalRequirement::TRE,
    FoundationalRequirement::RA};

// Lower-case key used in documents ("iac", "uc", ...).
std::string_view key(FoundationalRequirement fr);
// Upper-case abbreviation ("IAC", ...).
std::string_view abbreviation(FoundationalRequirement fr);
// Case-insensitive inverse of key()/abbreviation().
FoundationalRequirement parse_requirement(std::string_view text);

enum class SlKind : std::uint8_t { Target, Achieved, Capability };

std::string_view key(SlKind kind);
SlKind parse_sl_kind(std::string_view text);

// A 7-component security level vector, every component in 0..4.
class SecurityLevelVector {
 public:
  static constexpr int kMinLevel = 0;
  static constexpr int kMaxLevel = 4;
  using Levels = std::array<int, kRequirementCount>;

  constexpr SecurityLevelVector() = default;
  explicit SecurityLevelVector(const Levels& levels, SlKind kind = SlKind::Target);

  static SecurityLevelVector uniform(int level, SlKind kind = SlKind::Target);

  int operator[](FoundationalRequirement fr) const {
    return levels_[static_cast<std::size_t>(fr)];
  }
  int at(std::size_t index) const { return levels_.at(index); }
  const Levels& levels() const noexcept { return levels_; }
  SlKind kind() const noexcept { return kind_; }

  // Copy with one component replaced; validates the new level.
  SecurityLevelVector with(FoundationalRequirement fr, int level) const;
  SecurityLevelVector with_kind(SlKind kind) const;

  int min_level() const;
  int max_level() const;

  friend bool operator==(const SecurityLevelVector&, const SecurityLevelVector&) = default;

 private:
  Levels levels_{};
  SlKind kind_ = SlKind::Target;
};

// "(2,2,3,1,1,1,1)"
std::string to_string(const SecurityLevelVector& v);

enum class PartialOrdering { Less, Greater, Equal, Incomparable };

std::string_view key(PartialOrdering ord);

// Componentwise partial order on the levels; the kind tag is ignored.
PartialOrdering compare_sl(const SecurityLevelVector& v, const SecurityLevelVector& w);

// v <= w componentwise.
bool dominated_by(const SecurityLevelVector& v, const SecurityLevelVector& w);

// Componentwise maximum (least upper bound). The result keeps v's kind.
SecurityLevelVector join_sl(const SecurityLevelVector& v, const SecurityLevelVector& w);

// Number of vectors with every component in [min_level, max_level].
std::uint64_t count_admissible_vectors(int min_level, int max_level);

// True iff every component of the target is covered by the capability.
// Throws DomainError when the kind tags are not Capability / Target.
bool meets_capability(const SecurityLevelVector& capability, const SecurityLevelVector& target);

// One class of an ordinal scale, 1-based. Ranks compare; they do not
// add, multiply or divide.
class Rank {
 public:
  explicit Rank(int value);
  int value() const noexcept { return value_; }
  friend auto operator<=>(const Rank&, const Rank&) = default;

 private:
  int value_;
};

// An ordered list of class labels, e.g. Remote < Unlikely < ... < Certain.
class OrdinalScale {
 public:
  OrdinalScale(std::string name, std::vector<std::string> labels);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  int size() const noexcept { return static_cast<int>(labels_.size()); }

  bool contains(Rank r) const noexcept { return r.value() <= size(); }
  Rank lowest() const { return Rank(1); }
  Rank highest() const { return Rank(size()); }
  const std::string& label(Rank r) const;
  // Accepts a label (case-insensitive) or a decimal rank.
  Rank rank_of(std::string_view label_or_rank) const;
  std::optional<Rank> predecessor(Rank r) const;
  std::optional<Rank> successor(Rank r) const;
  // Moves r down by `steps` classes, stopping at the lowest class.
  Rank lowered(Rank r, int steps) const;

  friend bool operator==(const OrdinalScale&, const OrdinalScale&) = default;

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

OrdinalScale sample_likelihood_scale();
OrdinalScale sample_impact_scale();

// A matrix cell / scenario placement. The defaulted ordering is the
// canonical enumeration order (likelihood first).
struct Cell {
  Rank likelihood;
  Rank impact;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Componentwise: a is no worse than b on both scales.
inline bool placement_leq(const Cell& a, const Cell& b) {
  return a.likelihood <= b.likelihood && a.impact <= b.impact;
}

enum class Band : std::uint8_t { Acceptable, Tolerable, Unacceptable };

inline int severity(Band b) { return static_cast<int>(b); }
std::string_view key(Band b);
// Terminal color name used by pretty printers.
std::string_view color(Band b);
Band parse_band(std::string_view text);

// Two ordinal scales plus a total, monotone band table.
class RiskMatrix {
 public:
  // bands is row-major: one row per impact class (lowest first), one
  // column per likelihood class (lowest first).
  RiskMatrix(OrdinalScale likelihood, OrdinalScale impact, std::vector<Band> bands,
             Rational tolerable_risk = 4);

  const OrdinalScale& likelihood() const noexcept { return likelihood_; }
  const OrdinalScale& impact() const noexcept { return impact_; }
  const std::vector<Band>& bands() const noexcept { return bands_; }
  const Rational& tolerable_risk() const noexcept { return tolerable_risk_; }

  bool contains(const Cell& c) const noexcept {
    return likelihood_.contains(c.likelihood) && impact_.contains(c.impact);
  }
  Band band(const Cell& c) const;
  // All cells in canonical order.
  std::vector<Cell> cells() const;

  friend bool operator==(const RiskMatrix&, const RiskMatrix&) = default;

 private:
  OrdinalScale likelihood_;
  OrdinalScale impact_;
  std::vector<Band> bands_;
  Rational tolerable_risk_;
};

// Sample 5x5 matrix with the default workbench banding.
RiskMatrix sample_risk_matrix();
// Same scales, banded by cell criticality: <=4 acceptable, 5..15
// tolerable, >=16 unacceptable.
RiskMatrix criticality_threshold_matrix();

struct Zone {
  std::string id;
  std::string name;
  std::vector<std::string> objects;
  friend bool operator==(const Zone&, const Zone&) = default;
};

struct Conduit {
  std::string id;
  std::array<std::string, 2> endpoints;
  friend bool operator==(const Conduit&, const Conduit&) = default;
};

struct Architecture {
  std::vector<std::string> objects;
  std::vector<Zone> zones;
  std::vector<Conduit> conduits;

  // Zone and conduit ids, in declaration order (zones first).
  std::vector<std::string> segment_ids() const;
  bool has_segment(std::string_view id) const;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

enum class FindingCode { ObjectInMultipleZones, ObjectUnassigned, DanglingEndpoint, DuplicateId };

std::string_view key(FindingCode code);

struct Finding {
  FindingCode code;
  std::string subject;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const noexcept { return findings.empty(); }
};

ValidationReport validate_architecture(const Architecture& arch);

}  // namespace secrisk

#endif  // SECRISK_CORE_MODEL_HPP
