// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_MINIMIZE_HPP
#define SECRISK_MINIMIZE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "secrisk/core_model.hpp"

// Kernels behind auto_minimize. The acceptability scan is embarrassingly
// parallel (one independent check per candidate vector) and has an OpenMP
// version; the serial version is the reference the tests compare against.
namespace secrisk::minimize {

// Per-scenario lookup: reduction[fr][level] on each scale, already
// resolved to the strongest effect at or below `level`.
struct ScenarioTable {
  int likelihood = 1;
  int impact = 1;
  std::array<std::array<int, 5>, kRequirementCount> likelihood_reduction{};
  std::array<std::array<int, 5>, kRequirementCount> impact_reduction{};
};

struct Problem {
  int floor = 1;
  std::vector<ScenarioTable> scenarios;
  // Row-major band severities: impact rows, likelihood columns.
  int likelihood_classes = 5;
  std::vector<std::uint8_t> acceptable_cells;
};

// Candidate vectors have every component in [floor, 4].
std::size_t candidate_count(int floor);
SecurityLevelVector::Levels decode(std::size_t index, int floor);
std::size_t encode(const SecurityLevelVector::Levels& levels, int floor);

bool acceptable(const Problem& p, const SecurityLevelVector::Levels& levels);

// mask[i] == 1 iff candidate i makes every scenario acceptable.
std::vector<std::uint8_t> scan_serial(const Problem& p);
std::vector<std::uint8_t> scan_parallel(const Problem& p);

// Indices of the minimal elements of the set described by mask,
// ascending. Exact for any mask, not only upward-closed ones.
std::vector<std::size_t> minimal_elements(const std::vector<std::uint8_t>& mask, int floor);

}  // namespace secrisk::minimize

#endif  // SECRISK_MINIMIZE_HPP
