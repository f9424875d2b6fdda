#include "carkit/jeffrey.hpp"

#include <algorithm>
#include <random>

#include "carkit/errors.hpp"
#include "sampling.hpp"

namespace carkit {

void PartitionConstraint::validate(const WorldSpace& space) const {
  if (cells.empty()) throw CarkitError(ErrorCode::InvalidInput, "constraint has no cells");
  if (alpha.size() != cells.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "constraint needs one weight per cell");
  std::vector<int> cover(space.size(), 0);
  for (const auto& cell : cells) {
    if (cell.empty()) throw CarkitError(ErrorCode::InvalidInput, "constraint has an empty cell");
    for (WorldIndex w : cell.members()) {
      if (w >= space.size())
        throw CarkitError(ErrorCode::InvalidInput, "constraint cell leaves the world space");
      ++cover[w];
    }
  }
  for (WorldIndex w = 0; w < space.size(); ++w)
    if (cover[w] != 1)
      throw CarkitError(ErrorCode::InvalidInput,
                        "constraint cells do not partition the worlds at '" + space.name(w) + "'");
  for (const auto& a : alpha)
    if (a < 0) throw CarkitError(ErrorCode::InvalidInput, "constraint weight is negative");
  if (sum(alpha) != 1)
    throw CarkitError(ErrorCode::InvalidInput, "constraint weights sum to " + to_string(sum(alpha)));
}

bool PartitionConstraint::same_partition(const PartitionConstraint& other) const {
  if (cells.size() != other.cells.size()) return false;
  return std::all_of(cells.begin(), cells.end(), [&](const Event& c) {
    return std::find(other.cells.begin(), other.cells.end(), c) != other.cells.end();
  });
}

bool operator==(const PartitionConstraint& a, const PartitionConstraint& b) {
  if (!a.same_partition(b)) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    auto it = std::find(b.cells.begin(), b.cells.end(), a.cells[i]);
    if (a.alpha[i] != b.alpha[static_cast<std::size_t>(it - b.cells.begin())]) return false;
  }
  return true;
}

std::string describe(const PartitionConstraint& c, const WorldSpace& space) {
  std::string s;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (i) s += "; ";
    s += to_string(c.alpha[i]) + " " + c.cells[i].describe(space);
  }
  return s;
}

NaiveDistribution jeffrey_update(const NaiveDistribution& p, const PartitionConstraint& c) {
  c.validate(p.space());
  RationalVector out(p.space().size(), Rational(0));
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (c.alpha[i] == 0) continue;
    const Rational pu = p.probability(c.cells[i]);
    if (pu == 0)
      throw CarkitError(ErrorCode::UndefinedJeffrey,
                        "cell " + c.cells[i].describe(p.space()) +
                            " has positive weight but prior probability 0");
    for (WorldIndex w : c.cells[i].members()) out[w] = c.alpha[i] * p[w] / pu;
  }
  return NaiveDistribution(p.space(), std::move(out));
}

// ---------------------------------------------------------------------------

ProbJointDistribution::ProbJointDistribution(WorldSpace space,
                                             std::vector<PartitionConstraint> constraints,
                                             RationalVector dense)
    : space_(std::move(space)), constraints_(std::move(constraints)), mass_(std::move(dense)) {
  canonicalize(mass_);
  for (auto& c : constraints_) canonicalize(c.alpha);
  if (constraints_.empty()) throw CarkitError(ErrorCode::InvalidInput, "no constraint observations");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    constraints_[i].validate(space_);
    if (constraints_[i].label.empty()) constraints_[i].label = "C" + std::to_string(i + 1);
    for (std::size_t k = 0; k < i; ++k) {
      if (constraints_[k] == constraints_[i])
        throw CarkitError(ErrorCode::InvalidInput, "repeated constraint observation");
      if (constraints_[k].label == constraints_[i].label)
        throw CarkitError(ErrorCode::InvalidInput, "repeated constraint label '" + constraints_[i].label + "'");
    }
  }
  if (mass_.size() != space_.size() * constraints_.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "mass table has the wrong size");
  for (const auto& m : mass_)
    if (m < 0) throw CarkitError(ErrorCode::InvalidInput, "negative mass");
  if (sum(mass_) != 1)
    throw CarkitError(ErrorCode::InvalidInput, "total mass is " + to_string(sum(mass_)) + ", not 1");
}

NaiveDistribution ProbJointDistribution::marginal_world() const {
  RationalVector m(space_.size(), Rational(0));
  for (WorldIndex w = 0; w < space_.size(); ++w)
    for (std::size_t i = 0; i < constraints_.size(); ++i) m[w] += mass(w, i);
  return NaiveDistribution(space_, std::move(m));
}

RationalVector ProbJointDistribution::marginal_constraints() const {
  RationalVector m(constraints_.size(), Rational(0));
  for (WorldIndex w = 0; w < space_.size(); ++w)
    for (std::size_t i = 0; i < constraints_.size(); ++i) m[i] += mass(w, i);
  return m;
}

NaiveDistribution ProbJointDistribution::posterior(std::size_t i) const {
  const Rational pc = marginal_constraints().at(i);
  if (pc == 0)
    throw CarkitError(ErrorCode::ZeroProbabilityObservation,
                      "constraint " + constraints_[i].label + " has probability 0");
  RationalVector m(space_.size());
  for (WorldIndex w = 0; w < space_.size(); ++w) m[w] = mass(w, i) / pc;
  return NaiveDistribution(space_, std::move(m));
}

AccuracyReport check_accuracy(const ProbJointDistribution& d) {
  AccuracyReport r;
  const RationalVector pc = d.marginal_constraints();
  for (std::size_t i = 0; i < d.constraints().size(); ++i) {
    bool ok = true;
    if (pc[i] > 0) {
      const NaiveDistribution post = d.posterior(i);
      const auto& c = d.constraints()[i];
      for (std::size_t j = 0; j < c.cells.size(); ++j) {
        const Rational actual = post.probability(c.cells[j]);
        if (actual != c.alpha[j]) {
          ok = false;
          r.witnesses.push_back({i, j, actual, c.alpha[j]});
        }
      }
    }
    r.per_constraint.push_back(ok);
    r.overall = r.overall && ok;
  }
  return r;
}

GcarCheck check_generalized_car(const ProbJointDistribution& d, std::size_t constraint,
                                std::size_t cell) {
  const PartitionConstraint& c = d.constraints().at(constraint);
  const Event& u = c.cells.at(cell);
  const NaiveDistribution pw = d.marginal_world();
  const Rational pc = d.marginal_constraints()[constraint];
  const Rational pu = pw.probability(u);
  GcarCheck r;

  if (pc > 0) {
    // Jeffrey's formula restricted to U_i needs only this cell.
    const bool undefined = c.alpha[cell] > 0 && pu == 0;
    for (WorldIndex w : u.members()) {
      const Rational actual = d.mass(w, constraint) / pc;
      const Rational expected = (c.alpha[cell] == 0 || undefined) ? Rational(0) : c.alpha[cell] * pw[w] / pu;
      if (undefined || actual != expected) {
        r.cond_a = false;
        r.a_world = w;
        r.a_actual = actual;
        r.a_expected = expected;
        break;
      }
    }
  }

  if (pu > 0) {
    Rational joint_u = 0;
    for (WorldIndex w : u.members()) joint_u += d.mass(w, constraint);
    const Rational rhs = joint_u / pu;
    for (WorldIndex w : u.members()) {
      if (pw[w] == 0) continue;
      const Rational lhs = d.mass(w, constraint) / pw[w];
      if (lhs != rhs) {
        r.cond_b = false;
        // Pair the offending world with one whose rate differs from it.
        for (WorldIndex v : u.members()) {
          if (pw[v] == 0 || d.mass(v, constraint) / pw[v] == lhs) continue;
          r.b_pair = {w, v};
          r.b_lhs = lhs;
          r.b_rhs = d.mass(v, constraint) / pw[v];
          break;
        }
        break;
      }
    }
  }
  return r;
}

bool generalized_car_all_cells(const ProbJointDistribution& d) {
  for (std::size_t i = 0; i < d.constraints().size(); ++i)
    for (std::size_t j = 0; j < d.constraints()[i].cells.size(); ++j)
      if (!check_generalized_car(d, i, j).cond_b) return false;
  return true;
}

namespace {

void check_gcar_inputs(const WorldSpace& space, const std::vector<PartitionConstraint>& constraints,
                       const RationalVector& p_o,
                       const std::vector<NaiveDistribution>& cell_conditionals) {
  if (constraints.empty()) throw CarkitError(ErrorCode::InvalidInput, "no constraints");
  for (const auto& c : constraints) {
    c.validate(space);
    if (!c.same_partition(constraints[0]))
      throw CarkitError(ErrorCode::MixedPartitions, "constraints use different partitions");
  }
  if (p_o.size() != constraints.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "one observation probability per constraint");
  for (const auto& x : p_o)
    if (x <= 0) throw CarkitError(ErrorCode::InvalidInput, "observation probabilities must be positive");
  if (sum(p_o) != 1) throw CarkitError(ErrorCode::InvalidInput, "observation probabilities must sum to 1");
  const auto& cells = constraints[0].cells;
  if (cell_conditionals.size() != cells.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "one conditional distribution per cell");
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (!(cell_conditionals[j].space() == space))
      throw CarkitError(ErrorCode::InvalidInput, "conditional over a different world space");
    if (cell_conditionals[j].probability(cells[j]) != 1)
      throw CarkitError(ErrorCode::InvalidInput,
                        "conditional for cell " + cells[j].describe(space) + " leaves the cell");
  }
}

// alpha of constraint c for the cell at position j of the reference partition.
Rational alpha_for(const PartitionConstraint& c, const Event& cell) {
  auto it = std::find(c.cells.begin(), c.cells.end(), cell);
  return c.alpha[static_cast<std::size_t>(it - c.cells.begin())];
}

}  // namespace

ProbJointDistribution construct_gcar_distribution(
    const WorldSpace& space, const std::vector<PartitionConstraint>& constraints,
    const RationalVector& p_o, const std::vector<NaiveDistribution>& cell_conditionals) {
  check_gcar_inputs(space, constraints, p_o, cell_conditionals);
  const auto& cells = constraints[0].cells;
  const std::size_t k = constraints.size();
  RationalVector dense(space.size() * k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const Rational a = alpha_for(constraints[i], cells[j]);
      for (WorldIndex w : cells[j].members()) dense[w * k + i] = p_o[i] * a * cell_conditionals[j][w];
    }
  return ProbJointDistribution(space, constraints, std::move(dense));
}

std::vector<std::uint64_t> sample_gcar(const std::vector<PartitionConstraint>& constraints,
                                       const RationalVector& p_o,
                                       const std::vector<NaiveDistribution>& cell_conditionals,
                                       std::size_t samples, std::uint64_t seed) {
  if (cell_conditionals.empty()) throw CarkitError(ErrorCode::InvalidInput, "no cells");
  const WorldSpace& space = cell_conditionals[0].space();
  check_gcar_inputs(space, constraints, p_o, cell_conditionals);
  const auto& cells = constraints[0].cells;
  const std::size_t k = constraints.size();

  const std::vector<double> obs_cdf = detail::cumulative(p_o);
  std::vector<std::vector<double>> cell_cdf, world_cdf;
  for (const auto& c : constraints) {
    RationalVector a;
    for (const auto& cell : cells) a.push_back(alpha_for(c, cell));
    cell_cdf.push_back(detail::cumulative(a));
  }
  for (const auto& cond : cell_conditionals) world_cdf.push_back(detail::cumulative(cond.masses()));

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(space.size() * k, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = detail::draw_index(obs_cdf, rng);
    const std::size_t j = detail::draw_index(cell_cdf[i], rng);
    const WorldIndex w = detail::draw_index(world_cdf[j], rng);
    ++counts[w * k + i];
  }
  return counts;
}

}  // namespace carkit
