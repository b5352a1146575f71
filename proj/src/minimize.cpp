// SPDX-License-Identifier: Apache-2.0

#include "secrisk/minimize.hpp"

#include <algorithm>

namespace secrisk::minimize {

std::size_t candidate_count(int floor) {
  return static_cast<std::size_t>(count_admissible_vectors(floor, SecurityLevelVector::kMaxLevel));
}

SecurityLevelVector::Levels decode(std::size_t index, int floor) {
  const auto radix = static_cast<std::size_t>(SecurityLevelVector::kMaxLevel - floor + 1);
  SecurityLevelVector::Levels levels{};
  for (std::size_t k = kRequirementCount; k-- > 0;) {
    levels[k] = floor + static_cast<int>(index % radix);
    index /= radix;
  }
  return levels;
}

std::size_t encode(const SecurityLevelVector::Levels& levels, int floor) {
  const auto radix = static_cast<std::size_t>(SecurityLevelVector::kMaxLevel - floor + 1);
  std::size_t index = 0;
  for (int l : levels) index = index * radix + static_cast<std::size_t>(l - floor);
  return index;
}

bool acceptable(const Problem& p, const SecurityLevelVector::Levels& levels) {
  for (const ScenarioTable& s : p.scenarios) {
    int dl = 0;
    int di = 0;
    for (std::size_t fr = 0; fr < kRequirementCount; ++fr) {
      const auto lvl = static_cast<std::size_t>(levels[fr]);
      dl += s.likelihood_reduction[fr][lvl];
      di += s.impact_reduction[fr][lvl];
    }
    const int l = std::max(1, s.likelihood - dl);
    const int i = std::max(1, s.impact - di);
    const auto cell = static_cast<std::size_t>((i - 1) * p.likelihood_classes + (l - 1));
    if (!p.acceptable_cells[cell]) return false;
  }
  return true;
}

std::vector<std::uint8_t> scan_serial(const Problem& p) {
  const std::size_t n = candidate_count(p.floor);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    mask[idx] = acceptable(p, decode(idx, p.floor)) ? 1 : 0;
  }
  return mask;
}

std::vector<std::uint8_t> scan_parallel(const Problem& p) {
  const auto n = static_cast<std::int64_t>(candidate_count(p.floor));
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < n; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    mask[u] = acceptable(p, decode(u, p.floor)) ? 1 : 0;
  }
  return mask;
}

std::vector<std::size_t> minimal_elements(const std::vector<std::uint8_t>& mask, int floor) {
  const auto radix = static_cast<std::size_t>(SecurityLevelVector::kMaxLevel - floor + 1);
  std::array<std::size_t, kRequirementCount> stride{};
  std::size_t s = 1;
  for (std::size_t k = kRequirementCount; k-- > 0;) {
    stride[k] = s;
    s *= radix;
  }

  // reach[i]: some member of the set lies at or below candidate i. Single
  // decrements lower the index, so one ascending pass suffices.
  std::vector<std::uint8_t> reach(mask.size(), 0);
  std::vector<std::size_t> minimal;
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    const auto levels = decode(idx, floor);
    bool below = false;
    for (std::size_t k = 0; k < kRequirementCount && !below; ++k) {
      if (levels[k] > floor && reach[idx - stride[k]]) below = true;
    }
    reach[idx] = (mask[idx] || below) ? 1 : 0;
    if (mask[idx] && !below) minimal.push_back(idx);
  }
  return minimal;
}

}  // namespace secrisk::minimize
