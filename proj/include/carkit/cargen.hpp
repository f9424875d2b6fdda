#pragma once

// The sensor-choice generative mechanism with optional rejection.
//
// Generation: draw w from the prior, draw a partition (a "sensor") from the
// partition weights, let U be the cell containing w; accept (w, U) with
// probability 1 - q_reject(U | partition), otherwise redraw the partition.
// With all rejection probabilities 0 this is the plain mechanism.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "carkit/prob_core.hpp"

namespace carkit {

struct CarGenParams {
  NaiveDistribution prior;
  std::vector<std::vector<Event>> partitions;
  RationalVector partition_weights;
  std::vector<RationalVector> rejection;  // rejection[p][c] for cell c of partition p
  Rational q;                             // per-pass rejection probability, same for every world
};

/// Empty when every invariant holds: each partition covers W with disjoint
/// nonempty cells, weights form a distribution, rejection probabilities lie
/// in [0,1], q < 1, and for every world with positive prior mass the
/// probability of rejecting a pass equals q.
std::vector<std::string> validate_params(const CarGenParams& p);

/// Probability of outputting cell U immediately, given some w in U was drawn:
/// sum over partitions containing U of weight * (1 - q_reject).
Rational acceptance_weight(const CarGenParams& p, const Event& cell);

/// Distinct cells with positive acceptance weight, in order of first appearance.
ObservationSet output_observations(const CarGenParams& p);

/// Exact output distribution Pr(w, U) = P_W(w) * acceptance_weight(U) / (1 - q).
/// Throws InvalidParams.
JointDistribution closed_form_distribution(const CarGenParams& p);
/// Same, over a caller-supplied observation set that must contain every
/// cell with positive acceptance weight.
JointDistribution closed_form_distribution(const CarGenParams& p, const ObservationSet& obs);

struct GenerationOutcome {
  WorldIndex world;
  std::size_t observation;  // index into output_observations(p)
  std::size_t iterations;   // partition draws until acceptance
};

class CarGenSampler {
 public:
  /// Throws InvalidParams.
  CarGenSampler(const CarGenParams& p, std::uint64_t seed);

  GenerationOutcome next();
  const ObservationSet& observations() const { return obs_; }

 private:
  std::size_t draw(const std::vector<double>& cdf);

  std::vector<double> prior_cdf_;
  std::vector<double> partition_cdf_;
  std::vector<std::vector<std::size_t>> cell_of_;     // [partition][world] -> cell
  std::vector<std::vector<double>> accept_;           // [partition][cell]
  std::vector<std::vector<std::size_t>> obs_index_;   // [partition][cell] -> observation
  ObservationSet obs_;
  std::mt19937_64 rng_;
};

struct SimulationResult {
  ObservationSet observations;
  std::size_t samples = 0;
  std::vector<std::uint64_t> counts;  // world-major, like JointDistribution::dense
  std::uint64_t total_iterations = 0;
  std::size_t max_iterations = 0;

  double mean_iterations() const;
  double frequency(WorldIndex w, std::size_t j) const;
};

/// Deterministic for a given seed.  Throws InvalidParams.
SimulationResult simulate(const CarGenParams& p, std::size_t samples, std::uint64_t seed);

/// 1/2 sum |empirical - exact| over all (world, observation) pairs.
double total_variation(const SimulationResult& sim, const JointDistribution& exact);

/// Parameters reproducing a CAR joint exactly: one two-cell partition
/// {U, complement} per observed U weighted by Pr(X_O = U), complement always
/// rejected, U rejected with probability 1 - eps / Pr(X_W in U) where eps is
/// the smallest Pr(X_W in U) over observed U.  Throws NotCar.
CarGenParams synthesize_params(const JointDistribution& d);

/// Parameters with every rejection probability 0 that reproduce d, found by
/// enumerating every family of pairwise-disjoint observed sets that covers
/// the support and solving for nonnegative partition weights.  nullopt when
/// no such parameterization exists.
std::optional<CarGenParams> find_plain_cargen_params(const JointDistribution& d);

}  // namespace carkit
