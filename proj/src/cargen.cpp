#include "carkit/cargen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carkit/car.hpp"
#include "carkit/errors.hpp"
#include "carkit/linalg.hpp"
#include "sampling.hpp"

namespace carkit {

std::vector<std::string> validate_params(const CarGenParams& p) {
  std::vector<std::string> v;
  const WorldSpace& space = p.prior.space();
  const std::size_t nw = space.size();

  if (p.partitions.empty()) v.push_back("at least one partition is required");
  if (p.partition_weights.size() != p.partitions.size())
    v.push_back("one weight per partition is required");
  if (p.rejection.size() != p.partitions.size())
    v.push_back("one rejection vector per partition is required");
  if (!v.empty()) return v;

  Rational wsum = 0;
  for (std::size_t k = 0; k < p.partitions.size(); ++k) {
    const auto& cells = p.partitions[k];
    const std::string name = "partition " + std::to_string(k + 1);
    std::vector<int> cover(nw, 0);
    for (const auto& cell : cells) {
      if (cell.empty()) v.push_back(name + " has an empty cell");
      for (WorldIndex w : cell.members()) {
        if (w >= nw) {
          v.push_back(name + " refers to a world outside the space");
          continue;
        }
        ++cover[w];
      }
    }
    for (WorldIndex w = 0; w < nw; ++w) {
      if (cover[w] == 0) v.push_back(name + " does not cover world '" + space.name(w) + "'");
      if (cover[w] > 1) v.push_back(name + " has overlapping cells at world '" + space.name(w) + "'");
    }
    if (p.partition_weights[k] < 0) v.push_back(name + " has negative weight");
    wsum += p.partition_weights[k];
    if (p.rejection[k].size() != cells.size()) {
      v.push_back(name + " needs one rejection probability per cell");
      continue;
    }
    for (const auto& r : p.rejection[k])
      if (r < 0 || r > 1) v.push_back(name + " has a rejection probability outside [0,1]");
  }
  if (wsum != 1) v.push_back("partition weights sum to " + to_string(wsum) + ", not 1");
  if (p.q < 0 || p.q >= 1) v.push_back("q must lie in [0,1)");
  if (!v.empty()) return v;

  for (WorldIndex w = 0; w < nw; ++w) {
    if (p.prior[w] == 0) continue;
    Rational qw = 0;
    for (std::size_t k = 0; k < p.partitions.size(); ++k)
      for (std::size_t c = 0; c < p.partitions[k].size(); ++c)
        if (p.partitions[k][c].contains(w)) qw += p.partition_weights[k] * p.rejection[k][c];
    if (qw != p.q)
      v.push_back("rejection probability at world '" + space.name(w) + "' is " + to_string(qw) +
                  ", expected q = " + to_string(p.q));
  }
  return v;
}

namespace {

void require_valid(const CarGenParams& p) {
  const auto v = validate_params(p);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid mechanism parameters:";
  for (const auto& s : v) os << "\n  " << s;
  throw CarkitError(ErrorCode::InvalidParams, os.str());
}

}  // namespace

Rational acceptance_weight(const CarGenParams& p, const Event& cell) {
  Rational a = 0;
  for (std::size_t k = 0; k < p.partitions.size(); ++k)
    for (std::size_t c = 0; c < p.partitions[k].size(); ++c)
      if (p.partitions[k][c] == cell) a += p.partition_weights[k] * (1 - p.rejection[k][c]);
  return a;
}

ObservationSet output_observations(const CarGenParams& p) {
  std::vector<Event> cells;
  for (const auto& part : p.partitions)
    for (const auto& cell : part)
      if (std::find(cells.begin(), cells.end(), cell) == cells.end() && acceptance_weight(p, cell) > 0)
        cells.push_back(cell);
  if (cells.empty()) throw CarkitError(ErrorCode::InvalidParams, "no cell can ever be accepted");
  return ObservationSet(p.prior.space(), std::move(cells));
}

JointDistribution closed_form_distribution(const CarGenParams& p) {
  require_valid(p);
  return closed_form_distribution(p, output_observations(p));
}

JointDistribution closed_form_distribution(const CarGenParams& p, const ObservationSet& obs) {
  require_valid(p);
  const std::size_t nw = p.prior.space().size();
  RationalVector dense(nw * obs.size(), Rational(0));
  const Rational scale = 1 / (1 - p.q);
  for (const auto& part : p.partitions)
    for (const auto& cell : part) {
      const Rational a = acceptance_weight(p, cell);
      if (a == 0) continue;
      auto j = obs.find_members(cell);
      if (!j)
        throw CarkitError(ErrorCode::InvalidParams,
                          "cell " + cell.describe(p.prior.space()) + " is not an observation");
      for (WorldIndex w : cell.members()) dense[w * obs.size() + *j] = p.prior[w] * a * scale;
    }
  return JointDistribution(p.prior.space(), obs, std::move(dense));
}

// ---------------------------------------------------------------------------
// Simulation

CarGenSampler::CarGenSampler(const CarGenParams& p, std::uint64_t seed)
    : obs_((require_valid(p), output_observations(p))), rng_(seed) {
  prior_cdf_ = detail::cumulative(p.prior.masses());
  partition_cdf_ = detail::cumulative(p.partition_weights);
  const std::size_t nw = p.prior.space().size();
  for (std::size_t k = 0; k < p.partitions.size(); ++k) {
    std::vector<std::size_t> cell_of(nw, 0);
    std::vector<double> accept;
    std::vector<std::size_t> index;
    for (std::size_t c = 0; c < p.partitions[k].size(); ++c) {
      const Event& cell = p.partitions[k][c];
      for (WorldIndex w : cell.members()) cell_of[w] = c;
      accept.push_back(to_double(1 - p.rejection[k][c]));
      index.push_back(obs_.find_members(cell).value_or(obs_.size()));
    }
    cell_of_.push_back(std::move(cell_of));
    accept_.push_back(std::move(accept));
    obs_index_.push_back(std::move(index));
  }
}

std::size_t CarGenSampler::draw(const std::vector<double>& cdf) {
  return detail::draw_index(cdf, rng_);
}

GenerationOutcome CarGenSampler::next() {
  const WorldIndex w = draw(prior_cdf_);
  for (std::size_t iterations = 1;; ++iterations) {
    const std::size_t k = draw(partition_cdf_);
    const std::size_t c = cell_of_[k][w];
    const double u = detail::uniform01(rng_);
    if (u < accept_[k][c]) return {w, obs_index_[k][c], iterations};
  }
}

double SimulationResult::mean_iterations() const {
  return samples ? static_cast<double>(total_iterations) / static_cast<double>(samples) : 0.0;
}

double SimulationResult::frequency(WorldIndex w, std::size_t j) const {
  return samples ? static_cast<double>(counts.at(w * observations.size() + j)) /
                       static_cast<double>(samples)
                 : 0.0;
}

SimulationResult simulate(const CarGenParams& p, std::size_t samples, std::uint64_t seed) {
  CarGenSampler sampler(p, seed);
  SimulationResult r;
  r.observations = sampler.observations();
  r.samples = samples;
  r.counts.assign(p.prior.space().size() * r.observations.size(), 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const GenerationOutcome o = sampler.next();
    ++r.counts[o.world * r.observations.size() + o.observation];
    r.total_iterations += o.iterations;
    r.max_iterations = std::max(r.max_iterations, o.iterations);
  }
  return r;
}

double total_variation(const SimulationResult& sim, const JointDistribution& exact) {
  const auto& obs = exact.observations();
  double tv = 0;
  std::vector<bool> matched(sim.observations.size(), false);
  for (std::size_t j = 0; j < obs.size(); ++j) {
    const auto sj = sim.observations.find_members(obs[j]);
    if (sj) matched[*sj] = true;
    for (WorldIndex w = 0; w < exact.space().size(); ++w) {
      const double emp = sj ? sim.frequency(w, *sj) : 0.0;
      tv += std::abs(emp - to_double(exact.mass(w, j)));
    }
  }
  for (std::size_t j = 0; j < sim.observations.size(); ++j)
    if (!matched[j])
      for (WorldIndex w = 0; w < exact.space().size(); ++w) tv += sim.frequency(w, j);
  return tv / 2;
}

// ---------------------------------------------------------------------------
// Parameter synthesis

CarGenParams synthesize_params(const JointDistribution& d) {
  if (!check_car(d).overall)
    throw CarkitError(ErrorCode::NotCar, "distribution does not satisfy CAR");
  const ObservationSet& obs = d.observations();
  const WorldSpace& space = d.space();
  const RationalVector po = marginal_obs(d);

  std::vector<std::size_t> observed;
  for (std::size_t j = 0; j < obs.size(); ++j)
    if (po[j] > 0) observed.push_back(j);

  Rational eps = 0;
  bool first = true;
  for (std::size_t j : observed) {
    const Rational pu = world_probability(d, obs[j]);
    if (first || pu < eps) eps = pu;
    first = false;
  }

  CarGenParams p{marginal_world(d), {}, {}, {}, 1 - eps};
  for (std::size_t j : observed) {
    const Event& u = obs[j];
    Event rest = u.complement(space.size());
    std::vector<Event> cells{u};
    RationalVector rejection{1 - eps / world_probability(d, u)};
    if (!rest.empty()) {
      if (auto k = obs.find_members(rest)) rest.set_label(obs[*k].label());
      cells.push_back(std::move(rest));
      rejection.push_back(1);
    }
    p.partitions.push_back(std::move(cells));
    p.partition_weights.push_back(po[j]);
    p.rejection.push_back(std::move(rejection));
  }
  return p;
}

std::optional<CarGenParams> find_plain_cargen_params(const JointDistribution& d) {
  const ObservationSet& obs = d.observations();
  const WorldSpace& space = d.space();
  const NaiveDistribution pw = marginal_world(d);
  const RationalVector po = marginal_obs(d);

  std::vector<WorldIndex> support;
  for (WorldIndex w = 0; w < space.size(); ++w)
    if (pw[w] > 0) support.push_back(w);
  const Event supp(support);

  std::vector<std::size_t> observed;
  for (std::size_t j = 0; j < obs.size(); ++j)
    if (po[j] > 0) observed.push_back(j);
  if (observed.size() >= 8 * sizeof(std::size_t) - 1)
    throw CarkitError(ErrorCode::PreconditionViolated, "too many observations to enumerate");

  // Every accepted cell carrying prior mass is reported, so each partition
  // restricted to the support is a disjoint family of observed sets.
  std::vector<std::vector<std::size_t>> families;
  for (std::size_t mask = 1; mask < (std::size_t{1} << observed.size()); ++mask) {
    std::vector<std::size_t> fam;
    Event covered;
    bool disjoint = true;
    for (std::size_t b = 0; b < observed.size() && disjoint; ++b) {
      if (!(mask & (std::size_t{1} << b))) continue;
      const Event& u = obs[observed[b]];
      if (covered.intersects(u)) disjoint = false;
      covered = covered.unite(u);
      fam.push_back(observed[b]);
    }
    if (disjoint && supp.subset_of(covered)) families.push_back(std::move(fam));
  }
  if (families.empty()) return std::nullopt;

  // Pr(X_O = U | w) = total weight of families containing U, for w in supp.
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (WorldIndex w : support)
    for (std::size_t j : observed) {
      if (!obs[j].contains(w)) continue;
      RationalVector row(families.size(), Rational(0));
      for (std::size_t f = 0; f < families.size(); ++f)
        if (std::find(families[f].begin(), families[f].end(), j) != families[f].end()) row[f] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(d.mass(w, j) / pw[w]);
    }
  rows.emplace_back(families.size(), Rational(1));
  rhs.push_back(1);
  const LpFeasibility lp = find_feasible_point(RationalMatrix::from_rows(rows), rhs);
  if (!lp.feasible) return std::nullopt;

  CarGenParams p{pw, {}, {}, {}, 0};
  for (std::size_t f = 0; f < families.size(); ++f) {
    if (lp.point[f] == 0) continue;
    std::vector<Event> cells;
    Event covered;
    for (std::size_t j : families[f]) {
      cells.push_back(obs[j]);
      covered = covered.unite(obs[j]);
    }
    if (Event rest = covered.complement(space.size()); !rest.empty()) cells.push_back(std::move(rest));
    p.rejection.emplace_back(cells.size(), Rational(0));
    p.partitions.push_back(std::move(cells));
    p.partition_weights.push_back(lp.point[f]);
  }
  return p;
}

}  // namespace carkit
