// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "secrisk/cli.hpp"
#include "secrisk/codec.hpp"
#include "support/fixtures.hpp"
#include "support/random_session.hpp"
#include "support/temp_dir.hpp"

using namespace secrisk;
using secrisk::testing::fixture_path;
using secrisk::testing::kExampleZone;
using secrisk::testing::example_session;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kSession = fixture_path("worked_example_session.json");

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"draft", "eval", "--likelihood", "4"}).code == cli::kExitUsage);
  CHECK(run({"tra", "minimize", "--session", kSession}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("draft eval") {
  const auto r = run({"draft", "eval", "--likelihood", "4", "--impact", "4"});
  REQUIRE(r.code == 0);
  const auto j = codec::parse_text(r.out);
  CHECK(j.at("risk") == 16);
  CHECK(j.at("crrf") == 4);
  CHECK(j.at("sl_t") == 3);
  CHECK(r.out == codec::to_text(codec::encode(
                     draft::evaluate_draft(Cell{Rank(4), Rank(4)}, sample_risk_matrix(), false), sample_risk_matrix())));

  const auto labels = run({"draft", "eval", "--likelihood", "Likely", "--impact", "Major", "--tolerable", "8"});
  REQUIRE(labels.code == 0);
  CHECK(codec::parse_text(labels.out).at("crrf") == 2);

  const auto safety = run({"--pretty", "draft", "eval", "--likelihood", "1", "--impact", "1", "--safety"});
  CHECK(safety.code == 0);
  CHECK(safety.out.find("SL-T=0") != std::string::npos);
  CHECK(safety.out.find("zero_sl_for_safety") != std::string::npos);

  CHECK(run({"draft", "eval", "--likelihood", "9", "--impact", "1"}).code == cli::kExitDomainError);
  CHECK(run({"draft", "eval", "--likelihood", "1", "--impact", "1", "--tolerable", "0"}).code ==
        cli::kExitDomainError);
}

TEST_CASE("draft anomalies") {
  const auto r = run({"draft", "anomalies", "--matrix", fixture_path("product_banding.json")});
  REQUIRE(r.code == 0);
  const auto m = criticality_threshold_matrix();
  CHECK(r.out == codec::to_text(codec::encode_anomalies(draft::find_band_anomalies(m), m)));
  CHECK(run({"draft", "anomalies", "--matrix", "sample"}).code == 0);
  CHECK(run({"draft", "anomalies", "--matrix", fixture_path("nope.json")}).code == cli::kExitDomainError);
}

TEST_CASE("spread") {
  const auto r = run({"spread", "--scheme", "decade"});
  REQUIRE(r.code == 0);
  CHECK(r.out == codec::to_text(codec::encode(semiquant::spread_analysis(semiquant::decade_scheme()))));
  CHECK(run({"spread", "--scheme", fixture_path("decade_scheme.json")}).out == r.out);
  CHECK(run({"spread"}).out == r.out);
  const auto pretty = run({"--pretty", "spread"});
  CHECK(pretty.out.find("max spread 1000") != std::string::npos);
  CHECK(run({"spread", "--series"}).code == 0);
}

TEST_CASE("tra commands match the engine") {
  const auto s = example_session();
  CHECK(run({"tra", "evaluate", "--session", kSession}).out ==
        codec::to_text(codec::encode(tra::evaluate_session(s), s.matrix)));
  CHECK(run({"tra", "minimize", "--session", kSession, "--zone", kExampleZone}).out ==
        codec::to_text(codec::encode_minimal(kExampleZone, tra::auto_minimize(s, kExampleZone))));
  CHECK(run({"compare", "--session", kSession}).out ==
        codec::to_text(codec::encode(tra::compare_with_draft(s), s.matrix)));
  CHECK(run({"tra", "run", "--session", kSession}).out ==
        codec::to_text(codec::encode(tra::iterate_until_acceptable(s, tra::GreedyStrategy{}))));

  // Extension may be omitted.
  const auto stem = kSession.substr(0, kSession.size() - 5);
  CHECK(run({"tra", "evaluate", "--session", stem}).code == 0);
  CHECK(run({"tra", "minimize", "--session", kSession, "--zone", "nowhere"}).code == cli::kExitDomainError);
}

TEST_CASE("tra run with a script and an output file") {
  secrisk::testing::TempDir dir;
  const auto out_file = (dir.path / "after.json").string();
  const auto r = run({"tra", "run", "--session", kSession, "--strategy", "script",
                      fixture_path("worked_example_script.json"), "--out", out_file});
  REQUIRE(r.code == 0);
  const auto outcome = codec::parse_text(r.out);
  CHECK(outcome.at("outcome") == "converged");
  const auto after = codec::decode_session(codec::read_file(out_file));
  CHECK(after.vector_for(kExampleZone) == secrisk::testing::sl(2, 2, 3, 1, 1, 1, 1));
  CHECK(after.history.size() == 3);
  CHECK(run({"tra", "run", "--session", kSession, "--strategy", "annealing"}).code != 0);
}

TEST_CASE("validate") {
  CHECK(run({"validate", "--session", kSession}).code == 0);
  secrisk::testing::TempDir dir;
  auto j = codec::read_file(kSession);
  j["architecture"]["conduits"] = codec::json::array({codec::json{{"id", "c1"}, {"endpoints", {"safety_zone", "ghost"}}}});
  const auto path = (dir.path / "broken.json").string();
  {
    std::ofstream f(path);
    f << codec::to_text(j);
  }
  const auto r = run({"validate", "--session", path});
  CHECK(r.code == cli::kExitDomainError);
  CHECK(r.out.find("ghost") != std::string::npos);
}

TEST_CASE("random sessions: CLI output equals the engine") {
  secrisk::testing::Rng rng(5);
  secrisk::testing::TempDir dir;
  for (int n = 0; n < 20; ++n) {
    const auto s = secrisk::testing::random_session(rng, "cli" + std::to_string(n));
    const auto path = (dir.path / (s.id + ".json")).string();
    {
      std::ofstream f(path);
      f << codec::to_text(codec::encode(s));
    }
    CHECK(run({"tra", "evaluate", "--session", path}).out ==
          codec::to_text(codec::encode(tra::evaluate_session(s), s.matrix)));
    const auto seg = s.architecture.segment_ids().front();
    CHECK(run({"tra", "minimize", "--session", path, "--zone", seg}).out ==
          codec::to_text(codec::encode_minimal(seg, tra::auto_minimize(s, seg))));
  }
}
