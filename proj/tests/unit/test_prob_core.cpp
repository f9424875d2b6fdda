#include "carkit/prob_core.hpp"
#include "common.hpp"
#include "generators.hpp"

using namespace carkit;
using carkit::testing::Gen;

using carkit::testing::code_of;

TEST_CASE("world space rejects empty and duplicate identifiers") {
  CHECK(code_of([] { WorldSpace(std::vector<std::string>{}); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { WorldSpace({"a", "b", "a"}); }) == ErrorCode::InvalidInput);
  const WorldSpace s({"a", "b", "c"});
  CHECK(s.index_of("c") == 2);
  CHECK_FALSE(s.find("d"));
  CHECK(code_of([&] { s.index_of("d"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("event set algebra") {
  const Event a({2, 0, 2}), b({1, 2});
  CHECK(a.members() == std::vector<WorldIndex>{0, 2});
  CHECK(a.intersect(b) == Event({2}));
  CHECK(a.minus(b) == Event({0}));
  CHECK(a.unite(b) == Event({0, 1, 2}));
  CHECK(a.complement(4) == Event({1, 3}));
  CHECK(a.intersects(b));
  CHECK(Event({2}).subset_of(a));
  CHECK_FALSE(b.subset_of(a));
  const WorldSpace s({"x", "y", "z"});
  CHECK(a.describe(s) == "{x,z}");
}

TEST_CASE("observation set validation") {
  const WorldSpace s({"a", "b"});
  CHECK(code_of([&] { ObservationSet(s, {Event(std::vector<WorldIndex>{})}); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { ObservationSet(s, {Event({0}), Event({0})}); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { ObservationSet(s, {Event({5})}); }) == ErrorCode::InvalidInput);
  const ObservationSet o(s, {Event({0, 1}, "both"), Event({1})});
  CHECK(o.index_of("both") == 0);
  CHECK(o.find_members(Event({1})) == 1u);
  CHECK_FALSE(o[1].label().empty());
}

TEST_CASE("naive distribution must be an exact distribution") {
  const WorldSpace s({"a", "b"});
  CHECK(code_of([&] { NaiveDistribution(s, {Rational(1, 2), Rational(1, 3)}); }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] { NaiveDistribution(s, {Rational(3, 2), Rational(-1, 2)}); }) == ErrorCode::InvalidInput);
  CHECK_THROWS_AS(NaiveDistribution(s, {Rational(1)}), CarkitError);
  const auto u = NaiveDistribution::uniform(s);
  CHECK(u[0] == Rational(1, 2));
  CHECK(u.probability(Event({0, 1})) == 1);
}

TEST_CASE("joint distribution enforces accuracy") {
  const WorldSpace s({"a", "b"});
  const ObservationSet o(s, {Event({0}), Event({0, 1})});
  CHECK(code_of([&] {
          JointDistribution(s, o, {Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)});
        }) == ErrorCode::InvalidInput);
  CHECK(code_of([&] {
          JointDistribution(s, o, {Rational(1, 2), Rational(0), Rational(0), Rational(1, 4)});
        }) == ErrorCode::InvalidInput);
  const auto d = JointDistribution::from_entries(
      s, o, {{0, 0, Rational(1, 4)}, {0, 0, Rational(1, 4)}, {1, 1, Rational(1, 2)}});
  CHECK(d.mass(0, 0) == Rational(1, 2));
  CHECK(d.entries().size() == 2);
  CHECK(marginal_obs(d) == RationalVector{Rational(1, 2), Rational(1, 2)});
  CHECK(world_probability(d, Event({1})) == Rational(1, 2));
  CHECK(condition_sophisticated(d, 1)[1] == 1);
}

TEST_CASE("conditioning errors on zero probability") {
  const WorldSpace s({"a", "b"});
  const ObservationSet o(s, {Event({0}), Event({1})});
  const JointDistribution d(s, o, {Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(code_of([&] { condition_sophisticated(d, 1); }) == ErrorCode::ZeroProbabilityObservation);
  CHECK(code_of([&] { condition_naive(marginal_world(d), Event({1})); }) == ErrorCode::ZeroProbabilityEvent);
}

TEST_CASE("marginals of random joints are distributions and posteriors stay in the observation") {
  Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const WorldSpace s = carkit::testing::worlds(g.between(1, 6));
    const ObservationSet o = carkit::testing::random_observations(g, s, g.between(1, 4));
    const JointDistribution d = carkit::testing::random_joint(g, s, o);
    CHECK(sum(marginal_world(d).masses()) == 1);
    const RationalVector po = marginal_obs(d);
    CHECK(sum(po) == 1);
    for (std::size_t j = 0; j < o.size(); ++j) {
      if (po[j] == 0) continue;
      const NaiveDistribution post = condition_sophisticated(d, j);
      CHECK(post.probability(o[j]) == 1);
    }
    CHECK(same_runs(d, d));
  }
}

TEST_CASE("same_runs ignores labels and zero-mass observations") {
  const WorldSpace s({"a", "b"});
  const ObservationSet o1(s, {Event({0, 1}, "x")});
  const ObservationSet o2(s, {Event({1}, "unused"), Event({0, 1}, "y")});
  const JointDistribution d1(s, o1, {Rational(1, 3), Rational(2, 3)});
  const JointDistribution d2(s, o2, {Rational(0), Rational(1, 3), Rational(0), Rational(2, 3)});
  CHECK(same_runs(d1, d2));
  const JointDistribution d3(s, o1, {Rational(1, 2), Rational(1, 2)});
  CHECK_FALSE(same_runs(d1, d3));
}
