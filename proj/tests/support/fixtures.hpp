// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_TESTS_FIXTURES_HPP
#define SECRISK_TESTS_FIXTURES_HPP

#include <string>

#include "secrisk/codec.hpp"

namespace secrisk::testing {

inline std::string fixture_path(const std::string& name) { return std::string(SECRISK_FIXTURE_DIR) + "/" + name; }

inline tra::AssessmentSession example_session() {
  return codec::decode_session(codec::read_file(fixture_path("worked_example_session.json")));
}

inline SecurityLevelVector sl(int a, int b, int c, int d, int e, int f, int g) {
  return SecurityLevelVector({a, b, c, d, e, f, g});
}

inline const std::string kExampleZone = "safety_zone";

}  // namespace secrisk::testing

#endif  // SECRISK_TESTS_FIXTURES_HPP
