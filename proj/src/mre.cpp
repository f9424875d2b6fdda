#include "carkit/mre.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "carkit/errors.hpp"
#include "carkit/linalg.hpp"

namespace carkit {

double relative_entropy(const std::vector<double>& q, const std::vector<double>& p) {
  if (q.size() != p.size()) throw CarkitError(ErrorCode::DimensionMismatch, "distributions differ in size");
  double d = 0;
  for (std::size_t w = 0; w < q.size(); ++w) {
    if (q[w] == 0) continue;
    if (p[w] == 0) return std::numeric_limits<double>::infinity();
    d += q[w] * std::log2(q[w] / p[w]);
  }
  return d;
}

std::vector<double> to_doubles(const NaiveDistribution& p) {
  std::vector<double> out;
  for (const auto& m : p.masses()) out.push_back(to_double(m));
  return out;
}

std::vector<LinearConstraint> weighted_to_linear(const WeightedEventConstraint& c,
                                                 std::size_t world_count) {
  if (c.events.size() != c.alpha.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "one weight per event is required");
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < c.events.size(); ++i) {
    LinearConstraint lc{RationalVector(world_count, Rational(0)), c.alpha[i],
                        "P(" + (c.events[i].label().empty() ? "U" + std::to_string(i + 1)
                                                            : c.events[i].label()) + ")"};
    for (WorldIndex w : c.events[i].members()) lc.coefficients.at(w) = 1;
    out.push_back(std::move(lc));
  }
  return out;
}

LinearConstraint conditional_to_linear(const Event& u, const Event& v, const Rational& alpha,
                                       std::size_t world_count) {
  LinearConstraint lc{RationalVector(world_count, Rational(0)), Rational(0), "P(U|V)"};
  for (WorldIndex w : v.members()) lc.coefficients.at(w) = u.contains(w) ? Rational(1 - alpha) : Rational(-alpha);
  return lc;
}

// ---------------------------------------------------------------------------
// Dual

MreDual::MreDual(std::vector<double> prior, const std::vector<LinearConstraint>& constraints)
    : prior_(std::move(prior)) {
  for (const auto& c : constraints) {
    std::vector<double> g(prior_.size());
    const double target = to_double(c.target);
    for (std::size_t w = 0; w < prior_.size(); ++w) g[w] = to_double(c.coefficients.at(w)) - target;
    g_.push_back(std::move(g));
  }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double MreDual::value(const std::vector<double>& beta) const {
  std::vector<double> s(prior_.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < prior_.size(); ++w) {
    double e = std::log(prior_[w]);
    for (std::size_t j = 0; j < g_.size(); ++j) e += beta[j] * g_[j][w];
    s[w] = e;
    m = std::max(m, e);
  }
  double acc = 0;
  for (double e : s) acc += std::exp(e - m);
  return m + std::log(acc);
}

std::vector<double> MreDual::tilted(const std::vector<double>& beta) const {
  std::vector<double> s(prior_.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < prior_.size(); ++w) {
    double e = std::log(prior_[w]);
    for (std::size_t j = 0; j < g_.size(); ++j) e += beta[j] * g_[j][w];
    s[w] = e;
    m = std::max(m, e);
  }
  double total = 0;
  for (double& e : s) total += (e = std::exp(e - m));
  for (double& e : s) e /= total;
  return s;
}

std::vector<double> MreDual::gradient(const std::vector<double>& beta) const {
  const std::vector<double> q = tilted(beta);
  std::vector<double> r;
  for (const auto& g : g_) r.push_back(dot(q, g));
  return r;
}

std::vector<std::vector<double>> MreDual::hessian(const std::vector<double>& beta) const {
  const std::vector<double> q = tilted(beta);
  const std::size_t k = g_.size();
  std::vector<double> r(k);
  for (std::size_t j = 0; j < k; ++j) r[j] = dot(q, g_[j]);
  std::vector<std::vector<double>> h(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0;
      for (std::size_t w = 0; w < q.size(); ++w) s += q[w] * g_[a][w] * g_[b][w];
      h[a][b] = s - r[a] * r[b];
    }
  return h;
}

// ---------------------------------------------------------------------------
// Solver

bool strictly_feasible(const std::vector<LinearConstraint>& constraints, std::size_t world_count) {
  if (constraints.empty()) return true;
  // Sum_w (f_j(w) - c_j) x_w = 0 with x >= 1; substitute x = y + 1.
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (const auto& c : constraints) {
    RationalVector row(world_count);
    Rational total = 0, target = c.target;
    target.canonicalize();
    for (std::size_t w = 0; w < world_count; ++w) {
      Rational f = c.coefficients.at(w);
      f.canonicalize();
      row[w] = f - target;
      total += row[w];
    }
    rows.push_back(std::move(row));
    rhs.push_back(-total);
  }
  return find_feasible_point(RationalMatrix::from_rows(rows), rhs).feasible;
}

namespace {

constexpr double kMaxStep = 8.0;

// One sweep of one-dimensional Newton steps, each safeguarded by halving.
void coordinate_sweep(const MreDual& dual, std::vector<double>& beta) {
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const auto h = dual.hessian(beta);
    const auto r = dual.gradient(beta);
    if (h[j][j] <= 0 || r[j] == 0) continue;
    const double f0 = dual.value(beta);
    double step = std::clamp(-r[j] / h[j][j], -kMaxStep, kMaxStep);
    for (int t = 0; t < 60; ++t, step /= 2) {
      std::vector<double> trial = beta;
      trial[j] += step;
      if (dual.value(trial) < f0 || (dual.value(trial) <= f0 + 1e-13 * (1 + std::abs(f0)) && std::abs(dual.gradient(trial)[j]) < std::abs(r[j]))) {
        beta = std::move(trial);
        break;
      }
    }
  }
}

}  // namespace

MreSolution mre_update(const NaiveDistribution& prior, const std::vector<LinearConstraint>& given,
                       const MreOptions& opts) {
  std::vector<LinearConstraint> constraints = given;
  for (auto& c : constraints) {
    canonicalize(c.coefficients);
    c.target.canonicalize();
  }
  const std::size_t n = prior.space().size();
  for (WorldIndex w = 0; w < n; ++w)
    if (prior[w] <= 0)
      throw CarkitError(ErrorCode::NonPositivePrior,
                        "prior gives no mass to world '" + prior.space().name(w) + "'");
  for (const auto& c : constraints) {
    if (c.coefficients.size() != n)
      throw CarkitError(ErrorCode::DimensionMismatch, "constraint needs one coefficient per world");
    if (is_zero_vector(c.coefficients))
      throw CarkitError(ErrorCode::InvalidInput, "constraint has no nonzero coefficient");
  }
  if (!strictly_feasible(constraints, n))
    throw CarkitError(ErrorCode::InfeasibleConstraints,
                      "no strictly positive distribution satisfies the constraints");

  const MreDual dual(to_doubles(prior), constraints);
  const std::size_t k = constraints.size();
  MreSolution sol;
  std::vector<double> beta(k, 0.0);
  std::vector<double> r = dual.gradient(beta);

  while (max_abs(r) > opts.residual_tolerance && sol.iterations < opts.max_iterations) {
    ++sol.iterations;
    const auto h = dual.hessian(beta);
    Eigen::MatrixXd hm(k, k);
    Eigen::VectorXd gv(k);
    for (std::size_t a = 0; a < k; ++a) {
      gv(a) = r[a];
      for (std::size_t b = 0; b < k; ++b) hm(a, b) = h[a][b];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hm);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double top = ev.maxCoeff();
    if (!(top > 0)) break;
    // Redundant constraints make the Hessian singular; step within its range.
    const bool ill = ev.minCoeff() <= top / opts.conditioning_limit;
    Eigen::VectorXd inv(k);
    for (std::size_t a = 0; a < k; ++a)
      inv(a) = (ill && ev(a) <= top / opts.conditioning_limit) ? 0.0 : 1.0 / ev(a);
    Eigen::VectorXd d = -(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose() * gv);
    // Near-saturated tilts have tiny curvature; a bounded step keeps the line search meaningful.
    if (d.lpNorm<Eigen::Infinity>() > kMaxStep) d *= kMaxStep / d.lpNorm<Eigen::Infinity>();

    const double f0 = dual.value(beta);
    const double slope = gv.dot(d);
    const double r0 = max_abs(r);
    bool moved = false;
    double t = 1.0;
    for (int halvings = 0; halvings < 60; ++halvings, t /= 2) {
      std::vector<double> trial(k);
      for (std::size_t a = 0; a < k; ++a) trial[a] = beta[a] + t * d(a);
      const double ft = dual.value(trial);
      // Armijo decrease; near the optimum rounding hides the decrease, so a
      // smaller residual at no larger value also counts.
      if (ft <= f0 + 1e-4 * t * slope || (ft <= f0 + 1e-13 * (1 + std::abs(f0)) && max_abs(dual.gradient(trial)) < r0)) {
        beta = std::move(trial);
        r = dual.gradient(beta);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }

  // Coordinate sweeps when Newton stalls short of the tolerance.
  for (std::size_t s = 0; max_abs(r) > opts.residual_tolerance && s < opts.max_fallback_sweeps; ++s) {
    sol.used_fallback = true;
    const double before = max_abs(r);
    coordinate_sweep(dual, beta);
    r = dual.gradient(beta);
    ++sol.iterations;
    if (!(max_abs(r) < before)) break;
  }

  // The tolerance used for acceptance is looser than the iteration target.
  if (!(max_abs(r) <= std::max(opts.residual_tolerance, 1e-10)))
    throw CarkitError(ErrorCode::InfeasibleConstraints, "solver did not reach the residual tolerance");

  sol.posterior = dual.tilted(beta);
  sol.residuals = r;
  sol.tilt.beta = beta;
  double z = 0;
  for (std::size_t w = 0; w < n; ++w) {
    double e = 0;
    for (std::size_t j = 0; j < k; ++j) e += beta[j] * to_double(constraints[j].coefficients[w]);
    z += std::exp(e) * to_double(prior[w]);
  }
  sol.tilt.z = z;
  return sol;
}

// ---------------------------------------------------------------------------
// Two-event constraints

namespace {

WeightedEventConstraint canonical(WeightedEventConstraint c) {
  canonicalize(c.alpha);
  return c;
}

void require_two_event_setting(const NaiveDistribution& prior, const WeightedEventConstraint& c) {
  const std::size_t n = prior.space().size();
  if (c.events.size() != 2 || c.alpha.size() != 2)
    throw CarkitError(ErrorCode::PreconditionViolated, "exactly two weighted events are required");
  for (const auto& a : c.alpha)
    if (a <= 0 || a >= 1) throw CarkitError(ErrorCode::PreconditionViolated, "weights must lie in (0,1)");
  const Event& u1 = c.events[0];
  const Event& u2 = c.events[1];
  const Event both = u1.unite(u2);
  if (u1.minus(u2).empty() || u2.minus(u1).empty() || u1.intersect(u2).empty() ||
      both.complement(n).empty())
    throw CarkitError(ErrorCode::PreconditionViolated,
                      "U1-U2, U2-U1, U1&U2 and the rest of W must all be nonempty");
  for (WorldIndex w = 0; w < n; ++w)
    if (prior[w] <= 0) throw CarkitError(ErrorCode::PreconditionViolated, "prior must be strictly positive");
}

// P(V | alpha U) via the two-cell Jeffrey update on U and its complement.
Rational single_term_probability(const NaiveDistribution& p, const Event& u, const Rational& alpha,
                                 const Event& v) {
  const Event rest = u.complement(p.space().size());
  const Rational pu = p.probability(u);
  const Rational pr = p.probability(rest);
  return alpha * p.probability(v.intersect(u)) / pu + (1 - alpha) * p.probability(v.intersect(rest)) / pr;
}

}  // namespace

JeffreyLikeResult is_jeffrey_like(const NaiveDistribution& prior, const WeightedEventConstraint& given,
                                  const JeffreyLikeOptions& opts) {
  const WeightedEventConstraint c = canonical(given);
  require_two_event_setting(prior, c);
  JeffreyLikeResult r;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t o = 1 - i;
    r.implied[i] = to_double(single_term_probability(prior, c.events[i], c.alpha[i], c.events[o]));
    if (!r.side && std::abs(r.implied[i] - to_double(c.alpha[o])) <= opts.tolerance) r.side = i;
  }
  r.jeffrey_like = r.side.has_value();
  r.beta = mre_update(prior, weighted_to_linear(c, prior.space().size())).tilt.beta;
  r.zero_tilt = std::abs(r.beta[0]) < opts.beta_zero || std::abs(r.beta[1]) < opts.beta_zero;
  return r;
}

CompatibilityResult check_two_observation_compatibility(const NaiveDistribution& prior,
                                                        const WeightedEventConstraint& given1,
                                                        const WeightedEventConstraint& given2,
                                                        const CompatibilityOptions& opts) {
  const WeightedEventConstraint c1 = canonical(given1), c2 = canonical(given2);
  require_two_event_setting(prior, c1);
  require_two_event_setting(prior, c2);
  if (!(c1.events[0] == c2.events[0]) || !(c1.events[1] == c2.events[1]))
    throw CarkitError(ErrorCode::PreconditionViolated, "both observations must weight the same two events");

  const std::size_t n = prior.space().size();
  const MreSolution s1 = mre_update(prior, weighted_to_linear(c1, n));
  const MreSolution s2 = mre_update(prior, weighted_to_linear(c2, n));
  CompatibilityResult r;
  r.beta1 = s1.tilt.beta;
  r.beta2 = s2.tilt.beta;
  r.z1 = s1.tilt.z;
  r.z2 = s2.tilt.z;

  const double e11 = std::expm1(r.beta1[0]), e12 = std::expm1(r.beta1[1]);
  const double e21 = std::expm1(r.beta2[0]), e22 = std::expm1(r.beta2[1]);
  // mu a_k + (1 - mu) b_k = 0 for the regions U1-U2, U2-U1 and U1&U2.
  const double a[3] = {e11, e12, e11 + e12 + e11 * e12};
  const double b[3] = {e21, e22, e21 + e22 + e21 * e22};

  const auto residuals_at = [&](double mu) {
    std::vector<double> res;
    for (int k = 0; k < 3; ++k) res.push_back(mu * a[k] + (1 - mu) * b[k]);
    return res;
  };
  const auto mixture_residual = [&](double lambda) {
    double m = 0;
    for (WorldIndex w = 0; w < n; ++w)
      m = std::max(m, std::abs(lambda * s1.posterior[w] + (1 - lambda) * s2.posterior[w] -
                               to_double(prior[w])));
    return m;
  };

  const double t = opts.degenerate_tolerance;
  if (std::abs(e11) < t && std::abs(e12) < t && std::abs(e21) < t && std::abs(e22) < t) {
    r.degenerate = true;
    r.lambda = 0.5;
    r.mu = 0.5 / r.z1;
    r.equation_residuals = residuals_at(*r.mu);
    r.mixture_residual = mixture_residual(0.5);
    r.feasible = r.mixture_residual < opts.mixture_tolerance;
    return r;
  }

  double num = 0, den = 0;
  for (int k = 0; k < 3; ++k) {
    num -= (a[k] - b[k]) * b[k];
    den += (a[k] - b[k]) * (a[k] - b[k]);
  }
  if (den == 0) {
    r.equation_residuals = residuals_at(0);
    return r;
  }
  const double mu = num / den;
  const double lambda = mu * r.z1;
  r.mu = mu;
  r.equation_residuals = residuals_at(mu);
  r.mixture_residual = mixture_residual(lambda);
  if (mu > 0 && mu < 1 && lambda > 0 && lambda < 1 && r.mixture_residual < opts.mixture_tolerance) {
    r.feasible = true;
    r.lambda = lambda;
  }
  return r;
}

}  // namespace carkit
