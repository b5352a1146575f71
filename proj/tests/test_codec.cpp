// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "secrisk/codec.hpp"
#include "secrisk/error.hpp"
#include "support/fixtures.hpp"
#include "support/random_session.hpp"

using namespace secrisk;
using secrisk::testing::fixture_path;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fixtures are stored canonically") {
  const auto session_text = slurp(fixture_path("worked_example_session.json"));
  CHECK(codec::to_text(codec::encode(codec::decode_session(codec::parse_text(session_text)))) == session_text);

  for (const char* name : {"sample_matrix.json", "product_banding.json"}) {
    const auto text = slurp(fixture_path(name));
    CHECK(codec::to_text(codec::encode(codec::decode_matrix(codec::parse_text(text)))) == text);
  }
  const auto scheme = slurp(fixture_path("decade_scheme.json"));
  CHECK(codec::to_text(codec::encode(codec::decode_scheme(codec::parse_text(scheme)))) == scheme);
}

TEST_CASE("fixture matrix equals the built-in sample") {
  CHECK(codec::decode_matrix(codec::read_file(fixture_path("sample_matrix.json"))) == sample_risk_matrix());
  CHECK(codec::decode_matrix(codec::read_file(fixture_path("product_banding.json"))) ==
        criticality_threshold_matrix());
}

TEST_CASE("rationals are exact strings") {
  CHECK(codec::encode(Rational(3, 4)) == "3/4");
  CHECK(codec::encode(Rational(4)) == 4);
  CHECK(codec::decode_rational("0.25") == Rational(1, 4));
  CHECK(codec::decode_rational(7) == Rational(7));
  CHECK_THROWS_AS(codec::decode_rational("x/2"), DomainError);
}

TEST_CASE("vectors accept objects and arrays") {
  const auto v = secrisk::testing::sl(1, 2, 3, 4, 0, 1, 2);
  const auto j = codec::encode(v);
  CHECK(j.at("iac") == 1);
  CHECK(j.at("ra") == 2);
  CHECK(j.at("kind") == "target");
  CHECK(codec::decode_vector(j) == v);
  CHECK(codec::decode_vector(codec::json::array({1, 2, 3, 4, 0, 1, 2})) == v);
  CHECK_THROWS_AS(codec::decode_vector(codec::json::array({1, 2, 3})), DomainError);
  CHECK_THROWS_AS(codec::decode_vector(codec::json::array({1, 2, 3, 4, 5, 1, 2})), DomainError);
  CHECK_THROWS_AS(codec::decode_vector(codec::json{{"iac", 1}}), DomainError);
}

TEST_CASE("malformed documents become domain errors") {
  CHECK_THROWS_AS(codec::parse_text("{"), DomainError);
  CHECK_THROWS_AS(codec::decode_session(codec::json::array()), DomainError);
  CHECK_THROWS_AS(codec::decode_session(codec::json{{"architecture", 3}}), DomainError);
  CHECK_THROWS_AS(codec::read_file(fixture_path("missing.json")), DomainError);

  auto j = codec::read_file(fixture_path("worked_example_session.json"));
  j["scenarios"][0]["likelihood"] = "Sometimes";
  CHECK_THROWS_AS(codec::decode_session(j), DomainError);
}

TEST_CASE("invalid sessions are rejected with findings") {
  auto j = codec::read_file(fixture_path("worked_example_session.json"));
  j["scenarios"][0]["zone"] = "nowhere";
  CHECK_THROWS_AS(codec::decode_session(j), ValidationError);
}

TEST_CASE("missing assignments default to the floor") {
  auto j = codec::read_file(fixture_path("worked_example_session.json"));
  j.erase("sl_assignment");
  auto s = codec::decode_session(j);
  CHECK(s.vector_for("safety_zone") == SecurityLevelVector::uniform(1));
  j["safety_floor"] = false;
  s = codec::decode_session(j);
  CHECK(s.vector_for("safety_zone") == SecurityLevelVector::uniform(0));
}

TEST_CASE("random sessions round-trip") {
  secrisk::testing::Rng rng(77);
  for (int n = 0; n < 1000; ++n) {
    auto s = secrisk::testing::random_session(rng, "rt" + std::to_string(n));
    if (n % 3 == 0) {
      const auto segs = s.architecture.segment_ids();
      s = tra::apply_and_reevaluate(s, segs[0], secrisk::testing::random_vector(rng, s.floor_level()),
                                    tra::ProcessStep::ApplyAdditionalCountermeasures, "step " + std::to_string(n))
              .session;
    }
    const auto text = codec::to_text(codec::encode(s));
    const auto back = codec::decode_session(codec::parse_text(text));
    CHECK(back == s);
    CHECK(codec::to_text(codec::encode(back)) == text);
  }
}

TEST_CASE("script documents") {
  const auto script = codec::decode_script(codec::read_file(fixture_path("worked_example_script.json")));
  REQUIRE(script.actions.size() == 3);
  CHECK(script.actions[0].bump ==
        std::vector<FoundationalRequirement>{FoundationalRequirement::IAC, FoundationalRequirement::UC});
  const auto direct = codec::decode_script(codec::parse_text(
      R"([{"zone": "safety_zone", "vector": [2, 2, 3, 1, 1, 1, 1]}])"));
  REQUIRE(direct.actions.size() == 1);
  CHECK(direct.actions[0].vector == secrisk::testing::sl(2, 2, 3, 1, 1, 1, 1));
}
