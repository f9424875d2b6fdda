#pragma once

// Jeffrey conditioning on partition constraints, accuracy of constraint
// observations, and the generalized CAR condition.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carkit/prob_core.hpp"

namespace carkit {

/// alpha_1 U_1; ...; alpha_n U_n over a partition of W.
struct PartitionConstraint {
  std::vector<Event> cells;
  RationalVector alpha;
  std::string label;

  /// Throws InvalidInput unless the cells are nonempty, disjoint and cover
  /// the space, and alpha is a probability vector of matching length.
  void validate(const WorldSpace& space) const;

  /// True when both use the same cells, in any order.
  bool same_partition(const PartitionConstraint& other) const;

  /// Equal cells carrying equal weights; the label is ignored.
  friend bool operator==(const PartitionConstraint& a, const PartitionConstraint& b);
};

/// "a:7/10 {1,2}; ..." for display.
std::string describe(const PartitionConstraint& c, const WorldSpace& space);

/// Sum_i alpha_i p(. | U_i).  Throws UndefinedJeffrey when some alpha_i > 0
/// has p(U_i) = 0.
NaiveDistribution jeffrey_update(const NaiveDistribution& p, const PartitionConstraint& c);

/// Joint over (world, constraint observation).  Mass is nonnegative and sums
/// to 1; accuracy is checked separately, not enforced.
class ProbJointDistribution {
 public:
  ProbJointDistribution() = default;
  /// World-major dense masses, mass[w * k + i].  Throws InvalidInput on
  /// invalid or repeated constraints, negative mass or total != 1.
  ProbJointDistribution(WorldSpace space, std::vector<PartitionConstraint> constraints,
                        RationalVector dense);

  const WorldSpace& space() const { return space_; }
  const std::vector<PartitionConstraint>& constraints() const { return constraints_; }
  const Rational& mass(WorldIndex w, std::size_t i) const {
    return mass_.at(w * constraints_.size() + i);
  }
  const RationalVector& dense() const { return mass_; }

  NaiveDistribution marginal_world() const;
  RationalVector marginal_constraints() const;
  /// Pr(X_W = . | X_O = C_i).  Throws ZeroProbabilityObservation.
  NaiveDistribution posterior(std::size_t i) const;

 private:
  WorldSpace space_;
  std::vector<PartitionConstraint> constraints_;
  RationalVector mass_;
};

/// Pr(X_W in U | X_O = C) = actual where alpha says expected.
struct AccuracyViolation {
  std::size_t constraint;
  std::size_t cell;
  Rational actual;
  Rational expected;
};

struct AccuracyReport {
  std::vector<bool> per_constraint;  // vacuously true for unobserved constraints
  std::vector<AccuracyViolation> witnesses;
  bool overall = true;
};

AccuracyReport check_accuracy(const ProbJointDistribution& d);

/// condA: Pr(X_W = w | X_O = C) = P_W(w | C) for w in U_i, when Pr(X_O = C) > 0.
/// condB: Pr(X_O = C | X_W = w) = Pr(X_O = C | X_W in U_i) for positive w in U_i.
struct GcarCheck {
  bool cond_a = true;
  bool cond_b = true;
  /// First world where condA fails, with the two sides.
  std::optional<WorldIndex> a_world;
  Rational a_actual, a_expected;
  /// Worlds whose reporting probabilities differ for condB.
  std::optional<std::pair<WorldIndex, WorldIndex>> b_pair;
  Rational b_lhs, b_rhs;
};

GcarCheck check_generalized_car(const ProbJointDistribution& d, std::size_t constraint,
                                std::size_t cell);

/// Conjunction of condB over every constraint and cell.  An aggregate not
/// named by the theory, which is stated one cell at a time.
bool generalized_car_all_cells(const ProbJointDistribution& d);

/// Pr(C_i, w) = p_o[i] * alpha_ij * cell_conditionals[j](w) for w in U_j.
/// cell_conditionals follow the cell order of constraints[0].  Throws
/// MixedPartitions when the constraints use different cells, InvalidInput
/// when p_o is not a positive distribution or a conditional leaves its cell.
ProbJointDistribution construct_gcar_distribution(
    const WorldSpace& space, const std::vector<PartitionConstraint>& constraints,
    const RationalVector& p_o, const std::vector<NaiveDistribution>& cell_conditionals);

/// Ancestral sampling of the same mechanism: constraint, then cell, then
/// world.  Returns world-major counts like ProbJointDistribution::dense.
std::vector<std::uint64_t> sample_gcar(const std::vector<PartitionConstraint>& constraints,
                                       const RationalVector& p_o,
                                       const std::vector<NaiveDistribution>& cell_conditionals,
                                       std::size_t samples, std::uint64_t seed);

}  // namespace carkit
