// SPDX-License-Identifier: Apache-2.0

#include "secrisk/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "secrisk/error.hpp"

namespace secrisk {

namespace {

constexpr std::array<std::string_view, kRequirementCount> kRequirementKeys = {
    "iac", "uc", "si", "dc", "rdf", "tre", "ra"};
constexpr std::array<std::string_view, kRequirementCount> kRequirementAbbrev = {
    "IAC", "UC", "SI", "DC", "RDF", "TRE", "RA"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_level(int level) {
  if (level < SecurityLevelVector::kMinLevel || level > SecurityLevelVector::kMaxLevel) {
    throw DomainError("security level " + std::to_string(level) + " outside 0..4");
  }
}

}  // namespace

std::string_view key(FoundationalRequirement fr) {
  return kRequirementKeys[static_cast<std::size_t>(fr)];
}

std::string_view abbreviation(FoundationalRequirement fr) {
  return kRequirementAbbrev[static_cast<std::size_t>(fr)];
}

FoundationalRequirement parse_requirement(std::string_view text) {
  const std::string k = lower(text);
  for (std::size_t i = 0; i < kRequirementCount; ++i) {
    if (kRequirementKeys[i] == k) return kAllRequirements[i];
  }
  throw DomainError("unknown foundational requirement '" + std::string(text) + "'");
}

std::string_view key(SlKind kind) {
  switch (kind) {
    case SlKind::Target: return "target";
    case SlKind::Achieved: return "achieved";
    case SlKind::Capability: return "capability";
  }
  return "target";
}

SlKind parse_sl_kind(std::string_view text) {
  const std::string k = lower(text);
  if (k == "target") return SlKind::Target;
  if (k == "achieved") return SlKind::Achieved;
  if (k == "capability") return SlKind::Capability;
  throw DomainError("unknown SL kind '" + std::string(text) + "'");
}

SecurityLevelVector::SecurityLevelVector(const Levels& levels, SlKind kind)
    : levels_(levels), kind_(kind) {
  for (int l : levels_) check_level(l);
}

SecurityLevelVector SecurityLevelVector::uniform(int level, SlKind kind) {
  Levels levels;
  levels.fill(level);
  return SecurityLevelVector(levels, kind);
}

SecurityLevelVector SecurityLevelVector::with(FoundationalRequirement fr, int level) const {
  check_level(level);
  SecurityLevelVector out = *this;
  out.levels_[static_cast<std::size_t>(fr)] = level;
  return out;
}

SecurityLevelVector SecurityLevelVector::with_kind(SlKind kind) const {
  SecurityLevelVector out = *this;
  out.kind_ = kind;
  return out;
}

int SecurityLevelVector::min_level() const {
  return *std::min_element(levels_.begin(), levels_.end());
}

int SecurityLevelVector::max_level() const {
  return *std::max_element(levels_.begin(), levels_.end());
}

std::string to_string(const SecurityLevelVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < kRequirementCount; ++i) {
    if (i) out += ',';
    out += std::to_string(v.at(i));
  }
  out += ')';
  return out;
}

std::string_view key(PartialOrdering ord) {
  switch (ord) {
    case PartialOrdering::Less: return "less";
    case PartialOrdering::Greater: return "greater";
    case PartialOrdering::Equal: return "equal";
    case PartialOrdering::Incomparable: return "incomparable";
  }
  return "incomparable";
}

PartialOrdering compare_sl(const SecurityLevelVector& v, const SecurityLevelVector& w) {
  bool some_less = false;
  bool some_greater = false;
  for (std::size_t i = 0; i < kRequirementCount; ++i) {
    if (v.at(i) < w.at(i)) some_less = true;
    if (v.at(i) > w.at(i)) some_greater = true;
  }
  if (some_less && some_greater) return PartialOrdering::Incomparable;
  if (some_less) return PartialOrdering::Less;
  if (some_greater) return PartialOrdering::Greater;
  return PartialOrdering::Equal;
}

bool dominated_by(const SecurityLevelVector& v, const SecurityLevelVector& w) {
  for (std::size_t i = 0; i < kRequirementCount; ++i) {
    if (v.at(i) > w.at(i)) return false;
  }
  return true;
}

SecurityLevelVector join_sl(const SecurityLevelVector& v, const SecurityLevelVector& w) {
  SecurityLevelVector::Levels out;
  for (std::size_t i = 0; i < kRequirementCount; ++i) out[i] = std::max(v.at(i), w.at(i));
  return SecurityLevelVector(out, v.kind());
}

std::uint64_t count_admissible_vectors(int min_level, int max_level) {
  if (min_level < SecurityLevelVector::kMinLevel || max_level > SecurityLevelVector::kMaxLevel ||
      min_level > max_level) {
    throw DomainError("invalid level bounds [" + std::to_string(min_level) + ", " +
                      std::to_string(max_level) + "]");
  }
  const auto per_component = static_cast<std::uint64_t>(max_level - min_level + 1);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < kRequirementCount; ++i) count *= per_component;
  return count;
}

bool meets_capability(const SecurityLevelVector& capability, const SecurityLevelVector& target) {
  if (capability.kind() != SlKind::Capability || target.kind() != SlKind::Target) {
    throw DomainError("meets_capability expects a capability vector and a target vector");
  }
  return dominated_by(target, capability);
}

Rank::Rank(int value) : value_(value) {
  if (value < 1) {
    throw DomainError("ordinal rank " + std::to_string(value) + " is below 1");
  }
}

OrdinalScale::OrdinalScale(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw DomainError("ordinal scale '" + name_ + "' needs at least two classes");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw DomainError("ordinal scale '" + name_ + "' has an empty label");
    if (!seen.insert(lower(l)).second) {
      throw DomainError("ordinal scale '" + name_ + "' repeats label '" + l + "'");
    }
  }
}

const std::string& OrdinalScale::label(Rank r) const {
  if (!contains(r)) {
    throw DomainError("rank " + std::to_string(r.value()) + " outside scale '" + name_ + "'");
  }
  return labels_[static_cast<std::size_t>(r.value() - 1)];
}

Rank OrdinalScale::rank_of(std::string_view label_or_rank) const {
  const std::string k = lower(label_or_rank);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (lower(labels_[i]) == k) return Rank(static_cast<int>(i) + 1);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), value);
  if (ec == std::errc() && ptr == k.data() + k.size() && value >= 1 && value <= size()) {
    return Rank(value);
  }
  throw DomainError("'" + std::string(label_or_rank) + "' is not a class of scale '" + name_ + "'");
}

std::optional<Rank> OrdinalScale::predecessor(Rank r) const {
  label(r);
  if (r.value() == 1) return std::nullopt;
  return Rank(r.value() - 1);
}

std::optional<Rank> OrdinalScale::successor(Rank r) const {
  label(r);
  if (r.value() == size()) return std::nullopt;
  return Rank(r.value() + 1);
}

Rank OrdinalScale::lowered(Rank r, int steps) const {
  for (int i = 0; i < steps; ++i) {
    auto p = predecessor(r);
    if (!p) break;
    r = *p;
  }
  return r;
}

OrdinalScale sample_likelihood_scale() {
  return OrdinalScale("likelihood", {"Remote", "Unlikely", "Possible", "Likely", "Certain"});
}

OrdinalScale sample_impact_scale() {
  return OrdinalScale("impact", {"Trivial", "Minor", "Moderate", "Major", "Critical"});
}

std::string_view key(Band b) {
  switch (b) {
    case Band::Acceptable: return "acceptable";
    case Band::Tolerable: return "tolerable";
    case Band::Unacceptable: return "unacceptable";
  }
  return "unacceptable";
}

std::string_view color(Band b) {
  switch (b) {
    case Band::Acceptable: return "green";
    case Band::Tolerable: return "yellow";
    case Band::Unacceptable: return "red";
  }
  return "red";
}

Band parse_band(std::string_view text) {
  const std::string k = lower(text);
  if (k == "acceptable" || k == "green") return Band::Acceptable;
  if (k == "tolerable" || k == "yellow") return Band::Tolerable;
  if (k == "unacceptable" || k == "red") return Band::Unacceptable;
  throw DomainError("unknown band '" + std::string(text) + "'");
}

RiskMatrix::RiskMatrix(OrdinalScale likelihood, OrdinalScale impact, std::vector<Band> bands,
                       Rational tolerable_risk)
    : likelihood_(std::move(likelihood)),
      impact_(std::move(impact)),
      bands_(std::move(bands)),
      tolerable_risk_(std::move(tolerable_risk)) {
  const auto cols = static_cast<std::size_t>(likelihood_.size());
  const auto rows = static_cast<std::size_t>(impact_.size());
  if (bands_.size() != rows * cols) {
    throw DomainError("band table has " + std::to_string(bands_.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
  if (tolerable_risk_ <= 0) {
    throw DomainError("tolerable risk must be positive");
  }
  std::vector<std::string> findings;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Band here = bands_[r * cols + c];
      if (c + 1 < cols && severity(bands_[r * cols + c + 1]) < severity(here)) {
        findings.push_back("band drops from likelihood " + std::to_string(c + 1) + " to " +
                           std::to_string(c + 2) + " at impact " + std::to_string(r + 1));
      }
      if (r + 1 < rows && severity(bands_[(r + 1) * cols + c]) < severity(here)) {
        findings.push_back("band drops from impact " + std::to_string(r + 1) + " to " +
                           std::to_string(r + 2) + " at likelihood " + std::to_string(c + 1));
      }
    }
  }
  if (!findings.empty()) throw ValidationError(std::move(findings));
}

Band RiskMatrix::band(const Cell& c) const {
  if (!contains(c)) {
    throw DomainError("cell (" + std::to_string(c.likelihood.value()) + "," +
                      std::to_string(c.impact.value()) + ") outside the risk matrix");
  }
  const auto cols = static_cast<std::size_t>(likelihood_.size());
  return bands_[static_cast<std::size_t>(c.impact.value() - 1) * cols +
                static_cast<std::size_t>(c.likelihood.value() - 1)];
}

std::vector<Cell> RiskMatrix::cells() const {
  std::vector<Cell> out;
  out.reserve(bands_.size());
  for (int l = 1; l <= likelihood_.size(); ++l) {
    for (int i = 1; i <= impact_.size(); ++i) out.push_back(Cell{Rank(l), Rank(i)});
  }
  return out;
}

RiskMatrix sample_risk_matrix() {
  constexpr auto A = Band::Acceptable;
  constexpr auto T = Band::Tolerable;
  constexpr auto U = Band::Unacceptable;
  // Rows: Trivial .. Critical; columns: Remote .. Certain.
  return RiskMatrix(sample_likelihood_scale(), sample_impact_scale(),
                    {A, A, A, A, T,
                     A, A, T, T, U,
                     A, T, T, U, U,
                     T, T, U, U, U,
                     T, U, U, U, U});
}

RiskMatrix criticality_threshold_matrix() {
  std::vector<Band> bands;
  for (int impact = 1; impact <= 5; ++impact) {
    for (int likelihood = 1; likelihood <= 5; ++likelihood) {
      const int c = impact * likelihood;
      bands.push_back(c <= 4 ? Band::Acceptable : c <= 15 ? Band::Tolerable : Band::Unacceptable);
    }
  }
  return RiskMatrix(sample_likelihood_scale(), sample_impact_scale(), std::move(bands));
}

std::vector<std::string> Architecture::segment_ids() const {
  std::vector<std::string> ids;
  for (const auto& z : zones) ids.push_back(z.id);
  for (const auto& c : conduits) ids.push_back(c.id);
  return ids;
}

bool Architecture::has_segment(std::string_view id) const {
  return std::any_of(zones.begin(), zones.end(), [&](const Zone& z) { return z.id == id; }) ||
         std::any_of(conduits.begin(), conduits.end(),
                     [&](const Conduit& c) { return c.id == id; });
}

std::string_view key(FindingCode code) {
  switch (code) {
    case FindingCode::ObjectInMultipleZones: return "object_in_multiple_zones";
    case FindingCode::ObjectUnassigned: return "object_unassigned";
    case FindingCode::DanglingEndpoint: return "dangling_endpoint";
    case FindingCode::DuplicateId: return "duplicate_id";
  }
  return "duplicate_id";
}

ValidationReport validate_architecture(const Architecture& arch) {
  ValidationReport report;

  std::set<std::string> ids;
  for (const auto& id : arch.segment_ids()) {
    if (!ids.insert(id).second) {
      report.findings.push_back({FindingCode::DuplicateId, id, "zone/conduit id '" + id + "' is used twice"});
    }
  }

  std::map<std::string, std::vector<std::string>> owners;
  for (const auto& obj : arch.objects) owners[obj];
  for (const auto& z : arch.zones) {
    for (const auto& obj : z.objects) owners[obj].push_back(z.id);
  }
  for (const auto& [obj, zones] : owners) {
    if (zones.size() > 1) {
      std::string list;
      for (const auto& z : zones) list += (list.empty() ? "" : ", ") + z;
      report.findings.push_back({FindingCode::ObjectInMultipleZones, obj,
                                 "object '" + obj + "' in " + std::to_string(zones.size()) +
                                     " zones (" + list + ")"});
    } else if (zones.empty()) {
      report.findings.push_back(
          {FindingCode::ObjectUnassigned, obj, "object '" + obj + "' is not assigned to any zone"});
    }
  }

  std::set<std::string> zone_ids;
  for (const auto& z : arch.zones) zone_ids.insert(z.id);
  for (const auto& c : arch.conduits) {
    for (const auto& end : c.endpoints) {
      if (!zone_ids.count(end)) {
        report.findings.push_back({FindingCode::DanglingEndpoint, c.id,
                                   "conduit '" + c.id + "' has dangling endpoint '" + end + "'"});
      }
    }
  }
  return report;
}

}  // namespace secrisk
