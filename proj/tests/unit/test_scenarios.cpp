#include "carkit/car.hpp"
#include "carkit/report.hpp"
#include "carkit/scenario.hpp"
#include "common.hpp"
#include "generators.hpp"

using namespace carkit;
using carkit::testing::code_of;
using carkit::testing::Gen;

namespace {

Rational posterior_of(const Scenario& s, const std::string& obs, const std::string& query) {
  const JointDistribution& d = *s.joint;
  const NaiveDistribution post = condition_sophisticated(d, d.observations().index_of(obs));
  for (const Event& q : s.queries)
    if (q.label() == query) return post.probability(q);
  FAIL("no such query");
  return 0;
}

}  // namespace

TEST_CASE("rationals in JSON") {
  CHECK(rational_from_json(Json("3/4")) == Rational(3, 4));
  CHECK(rational_from_json(Json::parse("0.1")) == Rational(1, 10));
  CHECK(rational_from_json(Json(2)) == 2);
  CHECK(rational_to_json(Rational(6, 8)) == Json("3/4"));
  CHECK(code_of([] { rational_from_json(Json(true)); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { rational_from_json(Json("x")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("every builtin round-trips through its file form bit-exactly") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const Scenario s = builtin(name);
    const std::string text = scenario_to_json(s).dump(2);
    const Scenario back = scenario_from_json(Json::parse(text));
    CHECK(scenario_to_json(back).dump(2) == text);
    CHECK(back.name == s.name);
    CHECK(back.kind == s.kind);
    if (s.joint) CHECK(back.joint->dense() == s.joint->dense());
    if (s.constraint_joint) CHECK(back.constraint_joint->dense() == s.constraint_joint->dense());
  }
}

TEST_CASE("builtin lookup errors") {
  CHECK(code_of([] { builtin("no-such-puzzle"); }) == ErrorCode::UnknownScenario);
  CHECK(code_of([] { builtin("no-such-puzzle", Rational(1, 2)); }) == ErrorCode::UnknownScenario);
  CHECK(code_of([] { builtin("example-4-5", Rational(1, 2)); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { builtin("monty-hall", Rational(3, 2)); }) == ErrorCode::InvalidInput);
}

TEST_CASE("three prisoners: the jailer's answer moves the posterior off one half") {
  for (const Rational& p : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
    CAPTURE(to_string(p));
    const Scenario s = builtin("three-prisoners", p);
    CHECK_FALSE(check_car(*s.joint).overall);
    if (p > 0) CHECK(posterior_of(s, "jailer-says-b", "a-pardoned") == p / (1 + p));
    if (p < 1) CHECK(posterior_of(s, "jailer-says-c", "a-pardoned") == (1 - p) / (2 - p));
    CHECK(condition_naive(marginal_world(*s.joint), s.observations->events()[0]).probability(s.queries[0]) ==
          Rational(1, 2));
  }
}

TEST_CASE("monty hall: switching wins with probability two thirds for a fair host") {
  const Scenario fair = builtin("monty-hall", Rational(1, 2));
  CHECK(posterior_of(fair, "opens3", "stay-wins") == Rational(1, 3));
  CHECK(posterior_of(fair, "opens2", "stay-wins") == Rational(1, 3));
  const Scenario biased = builtin("monty-hall", Rational(1));
  CHECK(posterior_of(biased, "opens3", "stay-wins") == Rational(1, 2));
  CHECK_FALSE(check_car(*fair.joint).overall);
}

TEST_CASE("missing at random is CAR for every reporting probability") {
  for (const Rational& t : {Rational(0), Rational(1, 3), Rational(1)}) {
    const Scenario s = builtin("mar", t);
    CHECK(check_car(*s.joint).overall);
  }
}

TEST_CASE("scenario schema violations are input errors") {
  const auto err = [](const std::string& text) { return code_of([&] { scenario_from_json(Json::parse(text)); }); };
  CHECK(err(R"({"worlds": []})") == ErrorCode::InvalidInput);
  CHECK(err(R"({"worlds": ["a", "a"]})") == ErrorCode::InvalidInput);
  CHECK(err(R"({"worlds": ["a", "b"], "prior": {"a": "1/2"}})") == ErrorCode::InvalidInput);
  CHECK(err(R"({"worlds": ["a"], "observations": [{"members": ["z"]}]})") == ErrorCode::InvalidInput);
  CHECK(err(R"({"worlds": ["a", "b"], "observations": [{"label": "u", "members": ["a"]}],
                "joint": [{"world": "b", "obs": "u", "p": 1}]})") == ErrorCode::InvalidInput);
  CHECK(code_of([] { load_json_file("/nonexistent/file.json"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("constraint files") {
  const WorldSpace s({"a", "b", "c"});
  const auto cs = constraints_from_json(Json::parse(R"({"constraints": [
      {"cells": [{"members": ["a"], "alpha": "1/3"}, {"members": ["b", "c"], "alpha": "2/3"}]},
      {"terms": [{"members": ["a", "b"], "alpha": 0.5}]},
      {"coeffs": {"a": 1, "c": -1}, "target": "0"},
      {"event": ["a"], "given": ["a", "b"], "alpha": "3/4"}]})"),
                                        s);
  REQUIRE(cs.size() == 4);
  CHECK(std::holds_alternative<PartitionConstraint>(cs[0]));
  CHECK(std::holds_alternative<ConditionalConstraint>(cs[3]));
  for (const auto& c : cs) {
    const Json j = constraint_to_json(c, s);
    CHECK(constraint_to_json(constraint_from_json(j, s), s) == j);
  }
  CHECK(code_of([&] { constraint_from_json(Json::parse(R"({"given": ["a"], "event": ["a"], "alpha": 1})"), s); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([&] { constraint_from_json(Json::parse(R"({"what": 1})"), s); }) == ErrorCode::InvalidInput);
}

TEST_CASE("mechanism parameter files round-trip") {
  Gen g(81);
  for (int trial = 0; trial < 50; ++trial) {
    const CarGenParams p = synthesize_params(testing::random_car_joint(g));
    const Json j = params_to_json(p);
    const CarGenParams back = params_from_json(Json::parse(j.dump()));
    CHECK(params_to_json(back) == j);
    CHECK(closed_form_distribution(back).dense() == closed_form_distribution(p).dense());
  }
}

TEST_CASE("reports are deterministic and respect applicability") {
  ReportOptions opts;
  opts.samples = 5000;
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const Scenario s = builtin(name);
    const auto applicable = applicable_analyses(s);
    CHECK_FALSE(applicable.empty());
    for (Analysis a : all_analyses()) {
      if (is_applicable(s, a)) {
        const Report r1 = run_report(s, a, opts), r2 = run_report(s, a, opts);
        CHECK(r1.text == r2.text);
        CHECK(r1.json.dump() == r2.json.dump());
        CHECK(r1.json["analysis"] == to_string(a));
      } else {
        CHECK(code_of([&] { run_report(s, a, opts); }) == ErrorCode::InapplicableAnalysis);
      }
    }
  }
  CHECK(code_of([] { parse_analysis("bogus"); }) == ErrorCode::InvalidInput);
  CHECK(parse_analysis("car-check") == Analysis::CarCheck);
}

TEST_CASE("report contents for the fixed puzzles") {
  const Report feas = run_report(builtin("example-4-5"), Analysis::Feasibility);
  CHECK(feas.text.find("unique gamma=(1/2, 1/2, 1/2)") != std::string::npos);
  CHECK(feas.text.find("P_O forced") != std::string::npos);
  const Report chk = run_report(builtin("three-prisoners"), Analysis::CarCheck);
  CHECK(chk.text.find("CAR fails") != std::string::npos);
  const Report mre = run_report(builtin("judy-benjamin"), Analysis::Mre);
  CHECK(mre.text.find("P(Blue): 0.500000 -> 0.53265") != std::string::npos);
  CHECK(mre.text.find("(increased)") != std::string::npos);
}

TEST_CASE("synthesized scenarios carry a CAR joint") {
  const Scenario base = builtin("example-4-2");
  const Scenario tri = builtin("example-4-5");
  const Scenario made = synthesize_scenario(tri, {}, std::nullopt);
  REQUIRE(made.joint);
  CHECK(check_car(*made.joint).overall);
  CHECK(code_of([&] { synthesize_scenario(base, {}, std::nullopt); }) == ErrorCode::InfeasibleGamma);
  CHECK(code_of([&] {
          synthesize_scenario(tri, {Rational(1), Rational(1), Rational(1)}, std::nullopt);
        }) == ErrorCode::InfeasibleGamma);
}
