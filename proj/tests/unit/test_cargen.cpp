#include "carkit/car.hpp"
#include "carkit/cargen.hpp"
#include "carkit/scenario.hpp"
#include "common.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace carkit;
using carkit::testing::code_of;
using carkit::testing::Gen;

namespace {

// Absorption probabilities of the generation loop solved per world:
// x(U) = a(U) + r x(U), with a the immediate output probability and r the
// per-pass rejection probability of that world.
RationalVector absorption_oracle(const CarGenParams& p, const ObservationSet& obs) {
  const std::size_t n = p.prior.space().size(), k = obs.size();
  RationalVector dense(n * k, Rational(0));
  for (WorldIndex w = 0; w < n; ++w) {
    if (p.prior[w] == 0) continue;
    Rational reject = 0;
    RationalVector immediate(k, Rational(0));
    for (std::size_t t = 0; t < p.partitions.size(); ++t)
      for (std::size_t c = 0; c < p.partitions[t].size(); ++c) {
        if (!p.partitions[t][c].contains(w)) continue;
        reject += p.partition_weights[t] * p.rejection[t][c];
        const auto j = obs.find_members(p.partitions[t][c]);
        if (j) immediate[*j] += p.partition_weights[t] * (1 - p.rejection[t][c]);
      }
    for (std::size_t j = 0; j < k; ++j) dense[w * k + j] = p.prior[w] * immediate[j] / (1 - reject);
  }
  return dense;
}

CarGenParams two_partition_params() {
  const WorldSpace s({"w1", "w2", "w3"});
  CarGenParams p;
  p.prior = NaiveDistribution(s, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  p.partitions = {{Event({0, 1}), Event({2})}, {Event({0}), Event({1, 2})}};
  p.partition_weights = {Rational(1, 4), Rational(3, 4)};
  p.rejection = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
  p.q = 0;
  return p;
}

}  // namespace

TEST_CASE("parameter validation lists each violated invariant") {
  CarGenParams p = two_partition_params();
  CHECK(validate_params(p).empty());
  p.partition_weights = {Rational(1, 2), Rational(1, 3)};
  CHECK_FALSE(validate_params(p).empty());
  p = two_partition_params();
  p.partitions[0] = {Event({0}), Event({2})};
  CHECK_FALSE(validate_params(p).empty());
  p = two_partition_params();
  p.rejection[0][1] = Rational(3, 2);
  CHECK_FALSE(validate_params(p).empty());
  p = two_partition_params();
  // Rejection that differs between worlds breaks the common-q invariant.
  p.rejection[0][1] = Rational(1, 2);
  p.q = Rational(1, 8);
  CHECK_FALSE(validate_params(p).empty());
  CHECK(code_of([&] { closed_form_distribution(p); }) == ErrorCode::InvalidParams);
}

TEST_CASE("closed form matches per-world absorption probabilities") {
  Gen g(41);
  for (int trial = 0; trial < 150; ++trial) {
    const JointDistribution d = testing::random_car_joint(g);
    const CarGenParams p = synthesize_params(d);
    const ObservationSet obs = output_observations(p);
    CHECK(closed_form_distribution(p).dense() == absorption_oracle(p, obs));
  }
  const CarGenParams plain = two_partition_params();
  CHECK(closed_form_distribution(plain).dense() == absorption_oracle(plain, output_observations(plain)));
}

TEST_CASE("synthesized parameters are valid and reproduce the joint exactly") {
  Gen g(43);
  for (int trial = 0; trial < 200; ++trial) {
    const JointDistribution d = testing::random_car_joint(g);
    const CarGenParams p = synthesize_params(d);
    CHECK(validate_params(p).empty());
    CHECK(p.q < 1);
    CHECK(same_runs(closed_form_distribution(p), d));
  }
}

TEST_CASE("synthesis refuses joints that are not CAR") {
  const Scenario s = builtin("three-prisoners");
  CHECK(code_of([&] { synthesize_params(*s.joint); }) == ErrorCode::NotCar);
}

TEST_CASE("mechanism output is CAR") {
  Gen g(45);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.between(2, 5);
    const WorldSpace s = testing::worlds(n);
    CarGenParams p;
    p.prior = g.naive(s, true);
    const std::size_t parts = g.between(1, 3);
    for (std::size_t t = 0; t < parts; ++t) {
      p.partitions.push_back(testing::random_partition(g, n, g.between(1, n)));
      p.rejection.emplace_back(p.partitions.back().size(), Rational(0));
    }
    p.partition_weights = g.distribution(parts);
    p.q = 0;
    REQUIRE(validate_params(p).empty());
    CHECK(check_car(closed_form_distribution(p)).overall);
  }
}

TEST_CASE("sampling is deterministic per seed and converges") {
  const CarGenParams p = synthesize_params(*builtin("example-4-5").joint);
  const SimulationResult a = simulate(p, 20000, 7), b = simulate(p, 20000, 7), c = simulate(p, 20000, 8);
  CHECK(a.counts == b.counts);
  CHECK(a.counts != c.counts);
  CHECK(a.samples == 20000);
  const JointDistribution exact = closed_form_distribution(p);
  CHECK(total_variation(a, exact) < 0.02);
  // Passes until acceptance are geometric with success probability 1 - q.
  CHECK(a.mean_iterations() == doctest::Approx(1.0 / (1.0 - to_double(p.q))).epsilon(0.03));
}

TEST_CASE("rejection-free parameters") {
  SUBCASE("none exist for the pairwise triangle") {
    const JointDistribution d = *builtin("example-4-5").joint;
    CHECK_FALSE(find_plain_cargen_params(d));
    CHECK_FALSE(testing::some_subfamily_partitions(d.observations().events(), Event({0, 1, 2}), 3));
  }
  SUBCASE("found parameters reproduce the joint") {
    Gen g(47);
    int found = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const JointDistribution d = testing::random_car_joint(g);
      const auto p = find_plain_cargen_params(d);
      std::vector<WorldIndex> support;
      const NaiveDistribution pw = marginal_world(d);
      for (WorldIndex w = 0; w < pw.space().size(); ++w)
        if (pw[w] > 0) support.push_back(w);
      std::vector<Event> observed;
      const RationalVector po = marginal_obs(d);
      for (std::size_t j = 0; j < po.size(); ++j)
        if (po[j] > 0) observed.push_back(d.observations()[j]);
      if (!p) continue;
      ++found;
      CHECK(validate_params(*p).empty());
      for (const auto& r : p->rejection)
        for (const auto& x : r) CHECK(x == 0);
      CHECK(same_runs(closed_form_distribution(*p), d));
      CHECK(testing::some_subfamily_partitions(observed, Event(support), pw.space().size()));
    }
    CHECK(found > 0);
  }
}
