#pragma once

// Minimum relative entropy updating on linear expectation constraints.
//
// The minimizer is an exponential tilt of the prior,
//   P^beta(w) = exp(sum_j beta_j f_j(w)) P(w) / Z,
// and beta minimizes the convex dual log Z(beta) - beta . c.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "carkit/prob_core.hpp"

namespace carkit {

/// Base-2 relative entropy D(q || p); +infinity unless q << p.
double relative_entropy(const std::vector<double>& q, const std::vector<double>& p);

std::vector<double> to_doubles(const NaiveDistribution& p);

/// E[f] = target with f given by one coefficient per world.
struct LinearConstraint {
  RationalVector coefficients;
  Rational target;
  std::string label;
};

/// alpha_1 U_1; ...; alpha_n U_n with arbitrary events.
struct WeightedEventConstraint {
  std::vector<Event> events;
  RationalVector alpha;
};

/// One indicator constraint E[1_U] = alpha per term.
std::vector<LinearConstraint> weighted_to_linear(const WeightedEventConstraint& c,
                                                 std::size_t world_count);

/// P(U | V) = alpha as E[1_{U and V} - alpha 1_V] = 0.
LinearConstraint conditional_to_linear(const Event& u, const Event& v, const Rational& alpha,
                                       std::size_t world_count);

struct TiltVector {
  std::vector<double> beta;
  double z = 1.0;  // sum_w exp(beta . f(w)) P(w)
};

struct MreSolution {
  std::vector<double> posterior;
  TiltVector tilt;
  std::vector<double> residuals;  // achieved minus target
  std::size_t iterations = 0;
  bool used_fallback = false;
};

struct MreOptions {
  double residual_tolerance = 1e-12;
  double conditioning_limit = 1e12;
  std::size_t max_iterations = 500;
  std::size_t max_fallback_sweeps = 200000;
};

/// Dual objective log sum_w P(w) exp(beta . (f(w) - c)).  Its gradient is
/// the residual vector of the tilted distribution.
class MreDual {
 public:
  MreDual(std::vector<double> prior, const std::vector<LinearConstraint>& constraints);

  std::size_t dimension() const { return g_.size(); }
  double value(const std::vector<double>& beta) const;
  std::vector<double> gradient(const std::vector<double>& beta) const;
  std::vector<std::vector<double>> hessian(const std::vector<double>& beta) const;
  std::vector<double> tilted(const std::vector<double>& beta) const;

 private:
  std::vector<double> prior_;
  std::vector<std::vector<double>> g_;  // g_[j][w] = f_j(w) - c_j
};

/// Throws NonPositivePrior unless every world has positive mass,
/// DimensionMismatch on malformed constraints, and InfeasibleConstraints
/// when no strictly positive distribution satisfies the constraints or the
/// solver fails to reach the residual tolerance.
MreSolution mre_update(const NaiveDistribution& prior, const std::vector<LinearConstraint>& constraints,
                       const MreOptions& opts = {});

/// Exact check that some strictly positive distribution satisfies every constraint.
bool strictly_feasible(const std::vector<LinearConstraint>& constraints, std::size_t world_count);

/// P(U_other | alpha_i U_i) = alpha_other within tolerance for some i.
struct JeffreyLikeResult {
  bool jeffrey_like = false;
  std::optional<std::size_t> side;         // term i whose single-term update suffices
  double implied[2] = {0, 0};              // implied[i] = P(U_other | alpha_i U_i)
  std::vector<double> beta;                // full two-term MRE tilt
  bool zero_tilt = false;                  // some |beta_i| below the zero threshold
  bool consistent() const { return jeffrey_like == zero_tilt; }
};

struct JeffreyLikeOptions {
  double tolerance = 1e-9;
  double beta_zero = 1e-7;
};

/// Requires two terms whose regions U1-U2, U2-U1, U1&U2 and W-(U1|U2) are
/// all nonempty, alphas in (0,1) and a strictly positive prior.  Throws
/// PreconditionViolated.
JeffreyLikeResult is_jeffrey_like(const NaiveDistribution& prior, const WeightedEventConstraint& c,
                                  const JeffreyLikeOptions& opts = {});

struct CompatibilityResult {
  bool feasible = false;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::vector<double> beta1, beta2;
  double z1 = 1, z2 = 1;
  std::vector<double> equation_residuals;  // the three tilt equations at mu
  double mixture_residual = 0;             // max_w |lambda P1 + (1-lambda) P2 - P|
  bool degenerate = false;                 // both posteriors equal the prior
};

struct CompatibilityOptions {
  double mixture_tolerance = 1e-8;
  double degenerate_tolerance = 1e-10;
};

/// Whether some lambda in (0,1) makes lambda P(.|C1) + (1-lambda) P(.|C2)
/// equal the prior, the requirement for MRE to agree with conditioning on
/// both observations.  C1 and C2 must weight the same two events.  Throws
/// PreconditionViolated.
CompatibilityResult check_two_observation_compatibility(const NaiveDistribution& prior,
                                                        const WeightedEventConstraint& c1,
                                                        const WeightedEventConstraint& c2,
                                                        const CompatibilityOptions& opts = {});

}  // namespace carkit
