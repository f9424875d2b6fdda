// One line per acceptance criterion; exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "carkit/car.hpp"
#include "carkit/cargen.hpp"
#include "carkit/errors.hpp"
#include "carkit/jeffrey.hpp"
#include "carkit/mre.hpp"
#include "carkit/scenario.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace carkit;
using carkit::testing::Gen;

namespace {

constexpr double kSimulationTv = 0.01;
constexpr std::size_t kSimulationSamples = 100000;
constexpr double kJeffreyAgreement = 1e-9;
constexpr double kJudyValue = 0.532657;
constexpr double kJudyTolerance = 1e-5;
constexpr double kJudyOracleAgreement = 1e-9;
constexpr double kGridEntropySlack = 1e-6;
constexpr int kGridSteps = 400;
constexpr double kMixtureResidual = 1e-8;
constexpr double kJeffreyLikeShare = 0.02;

struct Check {
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

std::string str(double x) {
  std::ostringstream os;
  os.precision(9);
  os << x;
  return os.str();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// 1
void three_prisoners(Check& c) {
  for (const Rational& p : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
    const Scenario s = builtin("three-prisoners", p);
    const CarCheckReport r = check_car(*s.joint);
    bool some_fails = false;
    for (const auto& o : r.per_observation) some_fails = some_fails || !o.passes();
    c.require(some_fails && !r.overall, "CAR holds for p=" + to_string(p));
  }
  c.summary = "CAR fails for p in {0,1/4,1/2,3/4,1}";
}

// 2
void chain_blockers(Check& c) {
  const Scenario s = builtin("example-4-2");
  const CarMatrix m = build_matrix(compute_atoms(s.space, *s.observations), *s.observations);
  c.require(m.matrix == RationalMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}), "unexpected matrix " + m.matrix.describe());
  bool witness = false;
  for (const Blocker& b : detect_blockers(m)) {
    c.require(verify_certificate(b.certificate, m.matrix.select_rows(b.rows).row_vectors()), "certificate fails");
    witness = witness || (b.certificate.kind == DependenceCertificate::Kind::AffineNonnegative &&
                          b.rows == std::vector<std::size_t>{0, 1} &&
                          b.certificate.coefficients == RationalVector{-1, 1} &&
                          b.certificate.combination == RationalVector{0, 1});
  }
  c.require(witness, "no witness -1*(1 0) + 1*(1 1) = (0 1)");
  c.require(solve_gamma(m.matrix).kind == GammaSolution::Kind::NoSolution, "solve_gamma found a solution");
  c.summary = "witness -1*(1 0) + 1*(1 1) = (0 1); S' gamma = 1 has no solution";
}

// 3
void triangle_unique_gamma(Check& c) {
  const Scenario s = builtin("example-4-5");
  const CarMatrix m = build_matrix(compute_atoms(s.space, *s.observations), *s.observations);
  const GammaSolution g = solve_gamma(m.matrix);
  const RationalVector half(3, Rational(1, 2));
  c.require(g.kind == GammaSolution::Kind::Unique && g.gamma == half, "gamma is not unique 1/2");
  const std::vector<RationalVector> priors{{Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                           {Rational(1, 2), Rational(1, 4), Rational(1, 4)},
                                           {Rational(1, 10), Rational(3, 10), Rational(3, 5)}};
  for (const auto& p : priors) {
    const JointDistribution d = construct_car_distribution(*s.observations, m, {0, 1, 2}, half, NaiveDistribution(s.space, p));
    c.require(check_car(d).overall, "constructed joint fails CAR");
    for (const Rational& x : marginal_obs(d)) c.require(x <= Rational(1, 2), "Pr(X_O=U) = " + to_string(x));
  }
  c.summary = "unique gamma=(1/2,1/2,1/2); 3 priors give CAR joints with Pr(X_O=U) <= 1/2";
}

// 4
void disjoint_observations(Check& c) {
  Gen g(1004);
  for (int i = 0; i < 500; ++i) {
    const WorldSpace s = testing::worlds(g.between(1, 7));
    const ObservationSet o = testing::random_disjoint_observations(g, s);
    c.require(check_car(testing::random_joint(g, s, o)).overall, "disjoint joint fails CAR");
  }
  for (int i = 0; i < 50; ++i) {
    const WorldSpace s = testing::worlds(g.between(2, 7));
    const ObservationSet o = testing::random_overlapping_observations(g, s);
    const auto d = non_car_joint(s, o);
    c.require(d && !check_car(*d).overall, "no counterexample for overlapping observations");
  }
  c.summary = "500 disjoint joints pass; 50 overlapping counterexamples fail";
}

// 5
void condition_equivalence(Check& c) {
  Gen g(1005);
  std::size_t car = 0;
  for (int i = 0; i < 1000; ++i) {
    const JointDistribution d = i % 4 == 0 ? testing::random_car_joint(g) : [&] {
      const WorldSpace s = testing::worlds(g.between(1, 6));
      return testing::random_joint(g, s, testing::random_observations(g, s, g.between(1, 4)));
    }();
    const CarCheckReport r = check_car(d);
    for (const auto& o : r.per_observation) c.require(o.consistent(), "conditions disagree");
    c.require(r.overall == testing::car_by_definition(d), "overall verdict disagrees with the definition");
    car += r.overall;
  }
  c.summary = "1000 joints (" + std::to_string(car) + " CAR), conditions a-d agree per observation";
}

// 6
void mechanism_round_trip(Check& c) {
  Gen g(1006);
  std::vector<CarGenParams> params;
  for (int i = 0; i < 100; ++i) {
    const JointDistribution d = testing::random_car_joint(g);
    const CarGenParams p = synthesize_params(d);
    c.require(validate_params(p).empty(), "synthesized parameters invalid");
    c.require(same_runs(closed_form_distribution(p), d), "closed form differs from the joint");
    params.push_back(p);
  }
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CarGenParams& p = params[seed - 1];
    const double tv = total_variation(simulate(p, kSimulationSamples, seed), closed_form_distribution(p));
    worst = std::max(worst, tv);
    c.require(tv < kSimulationTv, "TV " + str(tv) + " for seed " + std::to_string(seed));
  }
  c.summary = "100 exact round trips; worst TV over 5 seeds " + str(worst);
}

// 7
void rejection_needed(Check& c) {
  const Scenario s = builtin("example-4-5");
  const JointDistribution& d = *s.joint;
  c.require(!find_plain_cargen_params(d), "rejection-free parameters found");
  c.require(!testing::some_subfamily_partitions(d.observations().events(), Event({0, 1, 2}), 3),
            "some observed sets partition the support");
  // Partitions {U_i, A_i}, weights 1/3, U_i never rejected, A_i always rejected.
  CarGenParams p;
  p.prior = marginal_world(d);
  for (std::size_t i = 0; i < 3; ++i) {
    const Event& u = d.observations()[i];
    p.partitions.push_back({u, u.complement(3)});
    p.partition_weights.push_back(Rational(1, 3));
    p.rejection.push_back({Rational(0), Rational(1)});
  }
  p.q = Rational(1, 3);
  c.require(validate_params(p).empty(), "hand-set parameters invalid");
  c.require(same_runs(closed_form_distribution(p), d), "hand-set parameters do not reproduce the joint");
  c.summary = "no rejection-free parameters; weights 1/3 with A_i rejected reproduce the joint";
}

// 8
void generalized_car(Check& c) {
  Gen g(1008);
  std::size_t holds = 0, cells = 0;
  for (int i = 0; i < 500; ++i) {
    const ProbJointDistribution d = testing::random_accurate_constraint_joint(g, i % 3 == 0);
    c.require(check_accuracy(d).overall, "generated joint inaccurate");
    for (std::size_t k = 0; k < d.constraints().size(); ++k)
      for (std::size_t j = 0; j < d.constraints()[k].cells.size(); ++j) {
        const GcarCheck r = check_generalized_car(d, k, j);
        c.require(r.cond_a == r.cond_b, "condA and condB disagree");
        holds += r.cond_b;
        ++cells;
      }
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = g.between(2, 6);
    const WorldSpace s = testing::worlds(n);
    const auto partition = testing::random_partition(g, n, g.between(2, n));
    std::vector<PartitionConstraint> cs;
    const std::size_t k = g.between(1, 3);
    while (cs.size() < k) {
      PartitionConstraint pc{partition, g.distribution(partition.size(), true), {}};
      if (std::find(cs.begin(), cs.end(), pc) == cs.end()) cs.push_back(pc);
    }
    std::vector<NaiveDistribution> conds;
    for (const Event& cell : partition) {
      RationalVector m(n, Rational(0));
      const RationalVector inside = g.distribution(cell.size(), true);
      for (std::size_t t = 0; t < cell.size(); ++t) m[cell.members()[t]] = inside[t];
      conds.emplace_back(s, m);
    }
    const ProbJointDistribution d = construct_gcar_distribution(s, cs, g.distribution(k), conds);
    c.require(check_accuracy(d).overall, "construction inaccurate");
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t j = 0; j < partition.size(); ++j) {
        const GcarCheck r = check_generalized_car(d, a, j);
        c.require(r.cond_a && r.cond_b, "construction fails generalized CAR");
      }
  }
  c.summary = "500 joints, " + std::to_string(cells) + " cells (" + std::to_string(holds) +
              " gCAR), condA <=> condB; 100 constructions pass";
}

// 9
void mre_is_jeffrey(Check& c) {
  Gen g(1009);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = g.between(2, 8);
    const NaiveDistribution prior = g.naive(testing::worlds(n));
    const auto cells = testing::random_partition(g, n, g.between(2, n));
    const PartitionConstraint pc{cells, g.distribution(cells.size()), {}};
    const MreSolution sol = mre_update(prior, weighted_to_linear({pc.cells, pc.alpha}, n));
    const double diff = max_abs_diff(sol.posterior, to_doubles(jeffrey_update(prior, pc)));
    worst = std::max(worst, diff);
    c.require(diff <= kJeffreyAgreement, "MRE and Jeffrey differ by " + str(diff));
  }
  c.summary = "200 partition constraints, worst difference " + str(worst);
}

// 10
void judy_benjamin(Check& c) {
  const Scenario s = builtin("judy-benjamin");
  const auto linear = to_linear(s.constraints.at(0), s.space.size());
  const MreSolution sol = mre_update(*s.prior, linear);
  double blue = 0;
  for (WorldIndex w : s.queries.at(0).members()) blue += sol.posterior[w];
  c.require(std::abs(blue - kJudyValue) <= kJudyTolerance, "P(Blue) = " + str(blue));
  c.require(std::abs(blue - testing::judy_benjamin_blue()) <= kJudyOracleAgreement, "closed form disagrees");
  c.require(blue > 0.5, "P(Blue) not above 1/2");
  std::vector<std::vector<double>> coeffs;
  std::vector<double> targets;
  for (const auto& l : linear) {
    std::vector<double> row;
    for (const auto& x : l.coefficients) row.push_back(to_double(x));
    coeffs.push_back(row);
    targets.push_back(to_double(l.target));
  }
  const auto p = to_doubles(*s.prior);
  const double grid = testing::grid_minimum(p, coeffs, targets, kGridSteps);
  const double kl = relative_entropy(sol.posterior, p);
  c.require(kl <= grid + kGridEntropySlack, "grid point beats the solver: " + str(grid) + " < " + str(kl));
  c.summary = "P(Blue) = " + str(blue) + "; grid minimum " + str(grid) + " >= " + str(kl) + " bits";
}

// Worlds 0..n-1 split over the four regions U1-U2, U2-U1, U1&U2, rest.
struct TwoEventSetup {
  std::size_t n;
  std::vector<std::size_t> region;  // per world, 0..3
  Event u1, u2;
};

TwoEventSetup two_event_setup(Gen& g) {
  TwoEventSetup t;
  t.n = g.between(4, 7);
  for (std::size_t w = 0; w < t.n; ++w) t.region.push_back(w < 4 ? w : g.index(4));
  std::vector<WorldIndex> a, b;
  for (std::size_t w = 0; w < t.n; ++w) {
    if (t.region[w] == 0 || t.region[w] == 2) a.push_back(w);
    if (t.region[w] == 1 || t.region[w] == 2) b.push_back(w);
  }
  t.u1 = Event(a, "U1");
  t.u2 = Event(b, "U2");
  return t;
}

WeightedEventConstraint weighted(const TwoEventSetup& t, const Rational& a1, const Rational& a2) {
  return {{t.u1, t.u2}, {a1, a2}};
}

Rational open_unit(Gen& g) {
  // Uniform on a 1/1000 grid inside (0.05, 0.95).
  Rational r(static_cast<long>(g.between(51, 949)), 1000);
  r.canonicalize();
  return r;
}

// 11
void two_observations(Check& c) {
  Gen g(1011);
  int infeasible = 0, skipped = 0;
  while (infeasible < 100) {
    const TwoEventSetup t = two_event_setup(g);
    const NaiveDistribution prior = g.naive(testing::worlds(t.n));
    const auto c1 = weighted(t, open_unit(g), open_unit(g));
    const auto c2 = weighted(t, open_unit(g), open_unit(g));
    if (is_jeffrey_like(prior, c1).jeffrey_like && is_jeffrey_like(prior, c2).jeffrey_like) {
      ++skipped;
      continue;
    }
    const CompatibilityResult r = check_two_observation_compatibility(prior, c1, c2);
    c.require(!r.feasible, "mixture found with a non-Jeffrey-like constraint");
    ++infeasible;
  }
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    // U1 and U2 independent under the prior; both constraints keep P(U2).
    const TwoEventSetup t = two_event_setup(g);
    const Rational a = open_unit(g), b = open_unit(g);
    const Rational region_mass[4] = {a * (1 - b), (1 - a) * b, a * b, (1 - a) * (1 - b)};
    std::vector<std::vector<WorldIndex>> members(4);
    for (std::size_t w = 0; w < t.n; ++w) members[t.region[w]].push_back(w);
    RationalVector mass(t.n);
    for (std::size_t r = 0; r < 4; ++r) {
      const RationalVector split = g.distribution(members[r].size());
      for (std::size_t k = 0; k < members[r].size(); ++k) mass[members[r][k]] = region_mass[r] * split[k];
    }
    const NaiveDistribution prior(testing::worlds(t.n), mass);
    Rational x = open_unit(g), y = open_unit(g);
    while (!(x > a)) x = (x + 1) / 2;
    while (!(y < a)) y = y / 2;
    const CompatibilityResult r = check_two_observation_compatibility(prior, weighted(t, x, b), weighted(t, y, b));
    c.require(r.feasible && r.lambda, "no mixture for Jeffrey-like constraints");
    if (r.lambda) {
      const double expected = to_double((a - y) / (x - y));
      c.require(std::abs(*r.lambda - expected) < 1e-8, "lambda " + str(*r.lambda) + " vs " + str(expected));
    }
    worst = std::max(worst, r.mixture_residual);
    c.require(r.mixture_residual < kMixtureResidual, "mixture residual " + str(r.mixture_residual));
  }
  c.summary = "100 infeasible (" + std::to_string(skipped) + " all-Jeffrey-like draws skipped); 20 feasible, worst residual " +
              str(worst);
}

// 12
void jeffrey_like_rarity(Check& c) {
  const WorldSpace s = testing::worlds(4);
  const NaiveDistribution prior(s, {Rational(1, 10), Rational(1, 5), Rational(3, 10), Rational(2, 5)});
  const Event u1({0, 2}), u2({1, 2});
  std::mt19937_64 rng(1012);
  std::uniform_real_distribution<double> alpha(0.05, 0.95);
  int like = 0;
  const int total = 10000;
  for (int i = 0; i < total; ++i) {
    const double a1 = alpha(rng), a2 = alpha(rng);
    const JeffreyLikeResult r = is_jeffrey_like(prior, {{u1, u2}, {from_double(a1), from_double(a2)}});
    like += r.jeffrey_like;
    c.require(r.consistent(), "classification disagrees with the tilt");
  }
  const double share = static_cast<double>(like) / total;
  c.require(share <= kJeffreyLikeShare, "share " + str(share));
  c.summary = std::to_string(like) + " of 10000 Jeffrey-like";
}

// 13
void monty_hall(Check& c) {
  const auto switch_wins = [](const Rational& p) {
    const Scenario s = builtin("monty-hall", p);
    const JointDistribution& d = *s.joint;
    const std::size_t opens3 = d.observations().index_of("opens3");
    return condition_sophisticated(d, opens3)[s.space.index_of("car2")];
  };
  const Rational fair = switch_wins(Rational(1, 2)), forced = switch_wins(Rational(1));
  c.require(fair == Rational(2, 3), "p=1/2 gives " + to_string(fair));
  c.require(forced == Rational(1, 2), "p=1 gives " + to_string(forced));
  c.summary = "switching wins " + to_string(fair) + " (p=1/2), " + to_string(forced) + " (p=1)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"three-prisoners", three_prisoners},
      {"chain-blockers", chain_blockers},
      {"triangle-unique-gamma", triangle_unique_gamma},
      {"disjoint-observations", disjoint_observations},
      {"condition-equivalence", condition_equivalence},
      {"mechanism-round-trip", mechanism_round_trip},
      {"rejection-needed", rejection_needed},
      {"generalized-car", generalized_car},
      {"mre-is-jeffrey", mre_is_jeffrey},
      {"judy-benjamin", judy_benjamin},
      {"two-observations", two_observations},
      {"jeffrey-like-rarity", jeffrey_like_rarity},
      {"monty-hall", monty_hall},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("[%s] %2zu %-22s %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.summary.c_str(), secs);
    for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.1fs\n", criteria.size() - failed, criteria.size(), total);
  return failed ? 1 : 0;
}
