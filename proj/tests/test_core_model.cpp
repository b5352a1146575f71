// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "secrisk/core_model.hpp"
#include "secrisk/error.hpp"
#include "support/random_session.hpp"

using namespace secrisk;

namespace {

SecurityLevelVector vec(int a, int b, int c, int d, int e, int f, int g, SlKind k = SlKind::Target) {
  return SecurityLevelVector({a, b, c, d, e, f, g}, k);
}

bool has(const ValidationReport& r, FindingCode code, const std::string& subject) {
  for (const auto& f : r.findings) {
    if (f.code == code && f.subject == subject) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("foundational requirements keep the canonical order") {
  REQUIRE(kAllRequirements.size() == 7);
  CHECK(key(kAllRequirements[0]) == "iac");
  CHECK(key(kAllRequirements[6]) == "ra");
  for (std::size_t k = 0; k < kRequirementCount; ++k) {
    CHECK(static_cast<std::size_t>(kAllRequirements[k]) == k);
    CHECK(parse_requirement(abbreviation(kAllRequirements[k])) == kAllRequirements[k]);
  }
  CHECK_THROWS_AS(parse_requirement("xyz"), DomainError);
}

TEST_CASE("SL components are restricted to 0..4") {
  CHECK_THROWS_AS(vec(5, 1, 1, 1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(vec(1, 1, 1, -1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(vec(1, 1, 1, 1, 1, 1, 1).with(FoundationalRequirement::SI, 5), DomainError);
  CHECK(vec(3, 3, 3, 1, 1, 3, 1)[FoundationalRequirement::TRE] == 3);
}

TEST_CASE("compare_sl") {
  CHECK(compare_sl(vec(1, 1, 1, 1, 1, 1, 1), vec(2, 2, 1, 1, 1, 1, 1)) == PartialOrdering::Less);
  CHECK(compare_sl(vec(2, 2, 1, 1, 1, 1, 1), vec(1, 1, 1, 1, 1, 1, 1)) == PartialOrdering::Greater);
  const auto v = vec(4, 2, 3, 1, 2, 3, 2);
  CHECK(compare_sl(v, v) == PartialOrdering::Equal);
  CHECK(compare_sl(vec(2, 1, 1, 1, 1, 1, 1), vec(1, 2, 1, 1, 1, 1, 1)) == PartialOrdering::Incomparable);
}

TEST_CASE("join_sl") {
  CHECK(join_sl(vec(2, 2, 1, 1, 1, 1, 1), vec(1, 1, 3, 1, 1, 1, 1)) == vec(2, 2, 3, 1, 1, 1, 1));
  const auto v = vec(4, 2, 3, 1, 2, 3, 2);
  CHECK(join_sl(v, v) == v);
  CHECK(join_sl(v, SecurityLevelVector::uniform(0)) == v);
}

TEST_CASE("count_admissible_vectors") {
  CHECK(count_admissible_vectors(1, 4) == 16384);
  CHECK(count_admissible_vectors(0, 4) == 78125);
  CHECK(count_admissible_vectors(2, 2) == 1);
  CHECK_THROWS_AS(count_admissible_vectors(3, 2), DomainError);
  CHECK_THROWS_AS(count_admissible_vectors(-1, 2), DomainError);
  CHECK_THROWS_AS(count_admissible_vectors(0, 5), DomainError);
}

TEST_CASE("meets_capability") {
  const auto target = vec(2, 2, 3, 1, 1, 1, 1);
  CHECK(meets_capability(SecurityLevelVector::uniform(4, SlKind::Capability), target));
  CHECK_FALSE(meets_capability(SecurityLevelVector::uniform(2, SlKind::Capability), target));
  CHECK(meets_capability(target.with_kind(SlKind::Capability), target));
  CHECK_THROWS_AS(meets_capability(target, target), DomainError);
  CHECK_THROWS_AS(meets_capability(target.with_kind(SlKind::Capability), target.with_kind(SlKind::Achieved)),
                  DomainError);
}

TEST_CASE("partial order and join laws over random vectors") {
  testing::Rng rng(1234);
  for (int n = 0; n < 1000; ++n) {
    const auto v = testing::random_vector(rng);
    const auto w = testing::random_vector(rng);
    const auto u = join_sl(w, testing::random_vector(rng));  // w <= u

    CHECK(compare_sl(v, v) == PartialOrdering::Equal);
    const auto vw = compare_sl(v, w);
    const auto wv = compare_sl(w, v);
    CHECK((vw == PartialOrdering::Less) == (wv == PartialOrdering::Greater));
    CHECK((vw == PartialOrdering::Equal) == (v == w));
    if (dominated_by(v, w)) CHECK(dominated_by(v, u));

    const auto j = join_sl(v, w);
    CHECK(j == join_sl(w, v));
    CHECK(join_sl(j, u) == join_sl(v, join_sl(w, u)));
    CHECK(dominated_by(v, j));
    CHECK(dominated_by(w, j));
    for (std::size_t k = 0; k < kRequirementCount; ++k) {
      if (j.at(k) == 0) continue;
      const auto lower = j.with(kAllRequirements[k], j.at(k) - 1);
      CHECK_FALSE((dominated_by(v, lower) && dominated_by(w, lower)));
    }
  }
}

TEST_CASE("ordinal scale exposes order operations only") {
  const auto s = sample_likelihood_scale();
  CHECK(s.size() == 5);
  CHECK(s.label(Rank(2)) == "Unlikely");
  CHECK(s.rank_of("likely") == Rank(4));
  CHECK(s.rank_of("3") == Rank(3));
  CHECK(s.successor(Rank(5)) == std::nullopt);
  CHECK(s.predecessor(Rank(1)) == std::nullopt);
  CHECK(*s.successor(Rank(1)) == Rank(2));
  CHECK(s.lowered(Rank(4), 2) == Rank(2));
  CHECK(s.lowered(Rank(2), 7) == Rank(1));
  CHECK(Rank(2) < Rank(3));
  CHECK_THROWS_AS(s.label(Rank(6)), DomainError);
  CHECK_THROWS_AS(s.rank_of("Sometimes"), DomainError);
  CHECK_THROWS_AS(Rank(0), DomainError);
  CHECK_THROWS_AS(OrdinalScale("x", {"a", "A"}), DomainError);
  CHECK_THROWS_AS(OrdinalScale("x", {"only"}), DomainError);
}

TEST_CASE("risk matrix rejects partial or non-monotone banding") {
  auto bands = sample_risk_matrix().bands();
  CHECK_THROWS_AS(RiskMatrix(sample_likelihood_scale(), sample_impact_scale(), {bands.begin(), bands.end() - 1}),
                  DomainError);
  bands[0] = Band::Unacceptable;
  CHECK_THROWS_AS(RiskMatrix(sample_likelihood_scale(), sample_impact_scale(), bands), ValidationError);
  CHECK_THROWS_AS(RiskMatrix(sample_likelihood_scale(), sample_impact_scale(), sample_risk_matrix().bands(), 0),
                  DomainError);
}

TEST_CASE("non-square matrices are allowed") {
  RiskMatrix m(OrdinalScale("l", {"low", "high"}), OrdinalScale("i", {"a", "b", "c"}),
               {Band::Acceptable, Band::Tolerable, Band::Tolerable, Band::Unacceptable, Band::Unacceptable,
                Band::Unacceptable});
  CHECK(m.band(Cell{Rank(2), Rank(1)}) == Band::Tolerable);
  CHECK(m.band(Cell{Rank(1), Rank(3)}) == Band::Unacceptable);
  CHECK(m.cells().size() == 6);
}

TEST_CASE("random monotone matrices are accepted") {
  testing::Rng rng(99);
  for (int n = 0; n < 200; ++n) CHECK_NOTHROW(testing::random_matrix(rng));
}

TEST_CASE("validate_architecture") {
  Architecture a;
  a.objects = {"plc1", "plc2", "gw1", "gw2"};
  a.zones = {{"A", "zone A", {"plc1", "gw1"}}, {"B", "zone B", {"plc2", "gw2"}}};
  a.conduits = {{"vpn", {"A", "B"}}};
  CHECK(validate_architecture(a).ok());

  auto twice = a;
  twice.zones[1].objects.push_back("gw1");
  const auto r1 = validate_architecture(twice);
  CHECK(r1.findings.size() == 1);
  CHECK(has(r1, FindingCode::ObjectInMultipleZones, "gw1"));

  auto dangling = a;
  dangling.conduits.push_back({"c9", {"A", "Z9"}});
  const auto r2 = validate_architecture(dangling);
  CHECK(r2.findings.size() == 1);
  CHECK(has(r2, FindingCode::DanglingEndpoint, "c9"));

  auto orphan = a;
  orphan.objects.push_back("hmi");
  CHECK(has(validate_architecture(orphan), FindingCode::ObjectUnassigned, "hmi"));

  auto dup = a;
  dup.conduits.push_back({"A", {"A", "B"}});
  CHECK(has(validate_architecture(dup), FindingCode::DuplicateId, "A"));
}

namespace {
template <class T>
concept Multipliable = requires(T a, T b) { a * b; };
template <class T>
concept Divisible = requires(T a, T b) { a / b; };
template <class T>
concept Addable = requires(T a, T b) { a + b; };
}  // namespace

// Ordinal ranks compare but never combine arithmetically.
static_assert(!Multipliable<Rank> && !Divisible<Rank> && !Addable<Rank>);
static_assert(!Multipliable<Cell> && !Divisible<Cell>);
static_assert(std::totally_ordered<Rank>);
