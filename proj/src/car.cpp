#include "carkit/car.hpp"

#include <algorithm>
#include <map>

#include "carkit/errors.hpp"

namespace carkit {

std::optional<std::size_t> AtomPartition::atom_of(WorldIndex w) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].members.contains(w)) return i;
  return std::nullopt;
}

AtomPartition compute_atoms(const WorldSpace& space, const ObservationSet& obs) {
  AtomPartition out;
  out.observation_count = obs.size();
  std::map<std::vector<std::size_t>, std::size_t> by_signature;
  std::vector<std::vector<WorldIndex>> members;
  for (WorldIndex w = 0; w < space.size(); ++w) {
    std::vector<std::size_t> sig;
    for (std::size_t j = 0; j < obs.size(); ++j)
      if (obs[j].contains(w)) sig.push_back(j);
    if (sig.empty()) continue;
    auto [it, inserted] = by_signature.try_emplace(sig, out.atoms.size());
    if (inserted) {
      out.atoms.push_back({sig, Event()});
      members.emplace_back();
    }
    members[it->second].push_back(w);
  }
  for (std::size_t i = 0; i < out.atoms.size(); ++i) {
    std::string label = "A" + std::to_string(i + 1);
    out.atoms[i].members = Event(std::move(members[i]), std::move(label));
  }
  return out;
}

CarMatrix build_matrix(const AtomPartition& atoms, const ObservationSet& obs) {
  if (atoms.atoms.empty()) throw CarkitError(ErrorCode::InvalidInput, "no atoms");
  RationalMatrix m(atoms.size(), obs.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j : atoms.atoms[i].signature) m(i, j) = 1;
  return {atoms, std::move(m)};
}

CarCheckReport check_car(const JointDistribution& d) {
  const ObservationSet& obs = d.observations();
  const NaiveDistribution pw = marginal_world(d);
  const RationalVector po = marginal_obs(d);

  CarCheckReport report;
  for (std::size_t j = 0; j < obs.size(); ++j) {
    const Event& u = obs[j];
    const Rational pu = pw.probability(u);
    ObservationCheck c;
    c.observed = po[j];

    if (po[j] > 0)
      for (WorldIndex w : u.members())
        if (d.mass(w, j) / po[j] != pw[w] / pu) c.cond_a = false;

    if (pu > 0) {
      const Rational obs_given_u = po[j] / pu;
      for (WorldIndex w : u.members()) {
        if (d.mass(w, j) / pu != (pw[w] / pu) * obs_given_u) c.cond_b = false;
        if (pw[w] > 0 && d.mass(w, j) / pw[w] != obs_given_u) c.cond_c = false;
      }
    }

    std::optional<WorldIndex> first;
    for (WorldIndex w : u.members()) {
      if (pw[w] == 0) continue;
      if (!first) {
        first = w;
        continue;
      }
      const Rational lhs = d.mass(*first, j) / pw[*first];
      const Rational rhs = d.mass(w, j) / pw[w];
      if (lhs != rhs) {
        if (c.cond_d) report.witnesses.push_back({j, *first, w, lhs, rhs});
        c.cond_d = false;
      }
    }

    report.overall = report.overall && c.passes();
    report.per_observation.push_back(c);
  }
  return report;
}

bool is_pairwise_disjoint(const ObservationSet& obs) {
  for (std::size_t i = 0; i < obs.size(); ++i)
    for (std::size_t j = i + 1; j < obs.size(); ++j)
      if (obs[i].intersects(obs[j])) return false;
  return true;
}

std::optional<JointDistribution> non_car_joint(const WorldSpace& space, const ObservationSet& obs) {
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t k = 0; k < obs.size(); ++k) {
      if (i == k) continue;
      const Event shared = obs[i].intersect(obs[k]);
      const Event extra = obs[i].minus(obs[k]);
      if (shared.empty() || extra.empty()) continue;
      // w0 in U_i and U_k always reports U_k; w1 in U_i - U_k reports U_i.
      const WorldIndex w0 = shared.members().front();
      const WorldIndex w1 = extra.members().front();
      return JointDistribution::from_entries(space, obs,
                                             {{w0, k, Rational(1, 2)}, {w1, i, Rational(1, 2)}});
    }
  }
  return std::nullopt;
}

const char* to_string(GammaSolution::Kind kind) {
  switch (kind) {
    case GammaSolution::Kind::NoSolution: return "NoSolution";
    case GammaSolution::Kind::NoNonnegativeSolution: return "NoNonnegativeSolution";
    case GammaSolution::Kind::Unique: return "Unique";
    case GammaSolution::Kind::Family: return "Family";
    case GammaSolution::Kind::FromDistribution: return "FromDistribution";
  }
  return "?";
}

GammaSolution gamma_from_distribution(const JointDistribution& d) {
  const ObservationSet& obs = d.observations();
  const NaiveDistribution pw = marginal_world(d);
  const RationalVector po = marginal_obs(d);

  GammaSolution out;
  out.kind = GammaSolution::Kind::FromDistribution;
  out.gamma.assign(obs.size(), Rational(0));
  for (std::size_t j = 0; j < obs.size(); ++j) {
    const Rational pu = pw.probability(obs[j]);
    if (pu > 0) out.gamma[j] = po[j] / pu;
  }

  const CarMatrix s = build_matrix(compute_atoms(d.space(), obs), obs);
  out.support_rows = support_rows(s, pw);
  if (!out.support_rows.empty()) {
    const RationalVector lhs = s.matrix.select_rows(out.support_rows).multiply(out.gamma);
    out.equation_holds = std::all_of(lhs.begin(), lhs.end(), [](const Rational& x) { return x == 1; });
  }
  return out;
}

GammaSolution solve_gamma(const RationalMatrix& s_prime) {
  const LinSolveResult r = solve(s_prime, RationalVector(s_prime.rows(), Rational(1)));
  GammaSolution out;
  switch (r.kind) {
    case LinSolveResult::Kind::NoSolution:
      out.kind = GammaSolution::Kind::NoSolution;
      return out;
    case LinSolveResult::Kind::Unique: {
      const bool nonneg = std::all_of(r.particular.begin(), r.particular.end(),
                                      [](const Rational& x) { return x >= 0; });
      out.kind = nonneg ? GammaSolution::Kind::Unique : GammaSolution::Kind::NoNonnegativeSolution;
      if (nonneg) out.gamma = r.particular;
      return out;
    }
    case LinSolveResult::Kind::Family: {
      const LpFeasibility lp =
          find_feasible_point(s_prime, RationalVector(s_prime.rows(), Rational(1)));
      if (!lp.feasible) {
        out.kind = GammaSolution::Kind::NoNonnegativeSolution;
        return out;
      }
      out.kind = GammaSolution::Kind::Family;
      out.gamma = lp.point;
      out.nullspace = r.nullspace;
      return out;
    }
  }
  return out;
}

std::vector<std::size_t> support_rows(const CarMatrix& s, const NaiveDistribution& pw) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.atoms.size(); ++i)
    if (pw.probability(s.atoms.atoms[i].members) > 0) rows.push_back(i);
  return rows;
}

namespace {

void check_support(const CarMatrix& s, const std::vector<std::size_t>& rows,
                   const NaiveDistribution& pw) {
  if (rows.empty()) throw CarkitError(ErrorCode::SupportMismatch, "no atoms selected");
  for (std::size_t r : rows)
    if (r >= s.atoms.size()) throw CarkitError(ErrorCode::SupportMismatch, "atom index out of range");
  if (support_rows(s, pw) != [&] {
        auto sorted = rows;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        return sorted;
      }())
    throw CarkitError(ErrorCode::SupportMismatch,
                      "prior must give positive mass to exactly the selected atoms");
  for (WorldIndex w = 0; w < pw.space().size(); ++w)
    if (pw[w] > 0 && !s.atoms.atom_of(w))
      throw CarkitError(ErrorCode::SupportMismatch,
                        "world '" + pw.space().name(w) + "' has mass but lies in no observation");
}

}  // namespace

JointDistribution construct_car_distribution(const ObservationSet& obs, const CarMatrix& s,
                                             const std::vector<std::size_t>& rows,
                                             const RationalVector& gamma,
                                             const NaiveDistribution& pw) {
  if (gamma.size() != obs.size() || s.matrix.cols() != obs.size())
    throw CarkitError(ErrorCode::DimensionMismatch, "gamma length must equal the observation count");
  check_support(s, rows, pw);
  for (const auto& g : gamma)
    if (g < 0) throw CarkitError(ErrorCode::InfeasibleGamma, "gamma must be nonnegative");
  const RationalVector lhs = s.matrix.select_rows(rows).multiply(gamma);
  for (const auto& x : lhs)
    if (x != 1) throw CarkitError(ErrorCode::InfeasibleGamma, "S' gamma != 1 for the selected atoms");

  std::vector<JointDistribution::Entry> entries;
  for (std::size_t r : rows) {
    const Atom& atom = s.atoms.atoms[r];
    for (WorldIndex w : atom.members.members()) {
      if (pw[w] == 0) continue;
      for (std::size_t j : atom.signature)
        if (gamma[j] != 0) entries.push_back({w, j, pw[w] * gamma[j]});
    }
  }
  return JointDistribution::from_entries(pw.space(), obs, entries);
}

namespace {

std::vector<std::vector<std::size_t>> candidate_subsets(std::size_t m, std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (m <= limit) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(i);
      out.push_back(std::move(sub));
    }
  } else {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        out.push_back({a, b});
        for (std::size_t c = b + 1; c < m; ++c) out.push_back({a, b, c});
      }
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    out.push_back(std::move(all));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

bool contains_subset(const std::vector<std::vector<std::size_t>>& found,
                     const std::vector<std::size_t>& rows) {
  return std::any_of(found.begin(), found.end(), [&](const auto& f) {
    return std::includes(rows.begin(), rows.end(), f.begin(), f.end());
  });
}

}  // namespace

std::vector<Blocker> detect_blockers(const CarMatrix& s, const BlockerSearchOptions& opts) {
  const std::size_t m = s.matrix.rows(), n = s.matrix.cols();
  const auto all_rows = s.matrix.row_vectors();

  std::vector<Blocker> out;
  std::vector<std::vector<std::vector<std::size_t>>> affine_found(n);
  std::vector<std::vector<std::size_t>> linear_found;

  for (const auto& subset : candidate_subsets(m, opts.full_enumeration_limit)) {
    std::vector<RationalVector> rows;
    rows.reserve(subset.size());
    for (std::size_t i : subset) rows.push_back(all_rows[i]);

    if (subset.size() >= 2) {
      for (std::size_t j = 0; j < n; ++j) {
        if (contains_subset(affine_found[j], subset)) continue;
        DependenceCertificate cert = nonneg_affine_combination(rows, j);
        if (!cert) continue;
        affine_found[j].push_back(subset);
        out.push_back({subset, std::move(cert)});
      }
    }
    if (!contains_subset(linear_found, subset)) {
      DependenceCertificate cert = affine_dependence(rows);
      if (cert) {
        linear_found.push_back(subset);
        out.push_back({subset, std::move(cert)});
      }
    }
  }
  return out;
}

RationalVector forced_observation_distribution(const ObservationSet& obs, const CarMatrix& s,
                                               const std::vector<std::size_t>& rows,
                                               const NaiveDistribution& pw) {
  const std::size_t n = obs.size();
  if (rows.size() != n) throw CarkitError(ErrorCode::SingularMatrix, "need exactly n rows");
  for (std::size_t r : rows) {
    if (r >= s.atoms.size()) throw CarkitError(ErrorCode::SupportMismatch, "atom index out of range");
    if (pw.probability(s.atoms.atoms[r].members) == 0)
      throw CarkitError(ErrorCode::SupportMismatch, "prior must be positive on the selected atoms");
  }
  const LinSolveResult r = solve(s.matrix.select_rows(rows), RationalVector(n, Rational(1)));
  if (r.kind != LinSolveResult::Kind::Unique)
    throw CarkitError(ErrorCode::SingularMatrix, "selected rows are not linearly independent");
  RationalVector po(n);
  for (std::size_t j = 0; j < n; ++j) po[j] = r.particular[j] * pw.probability(obs[j]);
  return po;
}

}  // namespace carkit
