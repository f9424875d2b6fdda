#pragma once

// Independent reference computations.  None of these share code paths with
// the library routines they check.

#include <optional>
#include <vector>

#include "carkit/linalg.hpp"
#include "carkit/prob_core.hpp"

namespace carkit::testing {

/// Leibniz expansion.
Rational determinant(const RationalMatrix& m);

/// Largest r with a nonzero r x r minor.
std::size_t minor_rank(const RationalMatrix& m);

/// Solution-set kind of A x = b from ranks of A and [A | b].
LinSolveResult::Kind rank_classification(const RationalMatrix& a, const RationalVector& b);

/// Searches integer lambda in [-bound, bound]^m with sum 0, combination >= 0
/// and combination[j] >= 1.
std::optional<RationalVector> integer_affine_search(const std::vector<RationalVector>& rows, std::size_t j,
                                                    int bound);

/// CAR by the definition: for every observation, the reporting probability
/// Pr(X_O = U | w) is the same for all positive worlds w in U.
bool car_by_definition(const JointDistribution& d);

/// Whether some subfamily of the sets partitions the support.
bool some_subfamily_partitions(const std::vector<Event>& sets, const Event& support, std::size_t world_count);

/// Minimizes base-2 relative entropy to the prior over {x : E_x[f_j] = c_j}
/// by compass search in the affine parameterization of the feasible set.
std::vector<double> kl_minimizer(const std::vector<double>& prior,
                                 const std::vector<std::vector<double>>& coefficients,
                                 const std::vector<double>& targets);

/// Relative entropy of the best point on a regular grid of the feasible set
/// (step 1/steps in each free coordinate).
double grid_minimum(const std::vector<double>& prior, const std::vector<std::vector<double>>& coefficients,
                    const std::vector<double>& targets, int steps);

/// 2 / (2 + 3^(1/4) + 3^(-3/4)).
double judy_benjamin_blue();

}  // namespace carkit::testing
