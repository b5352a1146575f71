// SPDX-License-Identifier: Apache-2.0

// Random generators shared by the property tests, the differential
// harness and the acceptance suite.

#ifndef SECRISK_TESTS_RANDOM_SESSION_HPP
#define SECRISK_TESTS_RANDOM_SESSION_HPP

#include <random>
#include <string>

#include "secrisk/tra_engine.hpp"

namespace secrisk::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline SecurityLevelVector random_vector(Rng& rng, int floor = 0, SlKind kind = SlKind::Target) {
  SecurityLevelVector::Levels l{};
  for (auto& x : l) x = uniform(rng, floor, 4);
  return SecurityLevelVector(l, kind);
}

// Componentwise random vector <= v (and >= floor).
inline SecurityLevelVector random_below(Rng& rng, const SecurityLevelVector& v, int floor = 0) {
  SecurityLevelVector::Levels l{};
  for (std::size_t k = 0; k < kRequirementCount; ++k) l[k] = uniform(rng, std::min(floor, v.at(k)), v.at(k));
  return SecurityLevelVector(l, v.kind());
}

// Monotone banding: each cell is at least as severe as its lower neighbours.
inline RiskMatrix random_matrix(Rng& rng) {
  std::vector<Band> bands(25);
  for (int i = 0; i < 5; ++i) {
    for (int l = 0; l < 5; ++l) {
      int b = 0;
      if (l > 0) b = std::max(b, severity(bands[static_cast<std::size_t>(i * 5 + l - 1)]));
      if (i > 0) b = std::max(b, severity(bands[static_cast<std::size_t>((i - 1) * 5 + l)]));
      if (chance(rng, 0.3)) b = std::min(2, b + 1);
      bands[static_cast<std::size_t>(i * 5 + l)] = static_cast<Band>(b);
    }
  }
  return RiskMatrix(sample_likelihood_scale(), sample_impact_scale(), std::move(bands));
}

inline tra::ThreatScenario random_scenario(Rng& rng, const std::string& id, const std::string& segment) {
  tra::ThreatScenario s;
  s.id = id;
  s.description = "random scenario " + id;
  s.segment = segment;
  s.unmitigated = Cell{Rank(uniform(rng, 1, 5)), Rank(uniform(rng, 1, 5))};
  for (auto& list : s.fr_effects) {
    if (!chance(rng, 0.35)) continue;
    int level = 0;
    int dl = 0;
    int di = 0;
    const int n = uniform(rng, 1, 3);
    for (int k = 0; k < n && level < 4; ++k) {
      level = uniform(rng, level + 1, 4);
      dl = std::min(4, dl + uniform(rng, 0, 2));
      di = std::min(4, di + uniform(rng, 0, 1));
      list.push_back({level, dl, di});
    }
  }
  return s;
}

inline tra::AssessmentSession random_session(Rng& rng, const std::string& id = "rnd") {
  tra::AssessmentSession s;
  s.id = id;
  s.safety_floor = chance(rng, 0.7);
  s.matrix = chance(rng, 0.5) ? sample_risk_matrix() : random_matrix(rng);

  const int zones = uniform(rng, 1, 3);
  for (int z = 0; z < zones; ++z) {
    Zone zone{"z" + std::to_string(z), "zone " + std::to_string(z), {}};
    const int objects = uniform(rng, 0, 3);
    for (int o = 0; o < objects; ++o) {
      const std::string obj = zone.id + "_obj" + std::to_string(o);
      zone.objects.push_back(obj);
      s.architecture.objects.push_back(obj);
    }
    s.architecture.zones.push_back(std::move(zone));
  }
  const int conduits = zones > 1 ? uniform(rng, 0, 2) : 0;
  for (int c = 0; c < conduits; ++c) {
    s.architecture.conduits.push_back(
        Conduit{"c" + std::to_string(c), {"z0", "z" + std::to_string(uniform(rng, 1, zones - 1))}});
  }

  const auto segments = s.architecture.segment_ids();
  for (const auto& seg : segments) s.sl_assignment.emplace(seg, random_vector(rng, s.floor_level()));
  const int scenarios = uniform(rng, 0, 6);
  for (int k = 0; k < scenarios; ++k) {
    const auto& seg = segments[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(segments.size()) - 1))];
    s.scenarios.push_back(random_scenario(rng, "S" + std::to_string(k), seg));
  }
  return s;
}

}  // namespace secrisk::testing

#endif  // SECRISK_TESTS_RANDOM_SESSION_HPP
