#pragma once

// Coarsening at random: the per-observation CAR conditions on a joint
// distribution, and the structural theory built on atoms and the 0/1
// characterizing matrix (which supports admit a CAR distribution at all).

#include <cstddef>
#include <optional>
#include <vector>

#include "carkit/linalg.hpp"
#include "carkit/prob_core.hpp"

namespace carkit {

struct Atom {
  std::vector<std::size_t> signature;  // sorted observation indices containing the atom
  Event members;
};

/// Worlds grouped by observation signature.  Worlds in no observation are
/// excluded.  Atoms are ordered by their first member in world order.
struct AtomPartition {
  std::vector<Atom> atoms;
  std::size_t observation_count = 0;

  std::size_t size() const { return atoms.size(); }
  /// Index of the atom containing w, if any.
  std::optional<std::size_t> atom_of(WorldIndex w) const;
};

AtomPartition compute_atoms(const WorldSpace& space, const ObservationSet& obs);

/// Rows are atoms, columns observations; entry 1 iff the atom lies inside the observation.
struct CarMatrix {
  AtomPartition atoms;
  RationalMatrix matrix;
};

CarMatrix build_matrix(const AtomPartition& atoms, const ObservationSet& obs);

struct ObservationCheck {
  bool cond_a = true;  // sophisticated posterior equals naive posterior
  bool cond_b = true;  // X_W = w independent of X_O = U given X_W in U
  bool cond_c = true;  // Pr(X_O=U | w) = Pr(X_O=U | X_W in U)
  bool cond_d = true;  // Pr(X_O=U | w) = Pr(X_O=U | w') for positive w, w' in U
  Rational observed;   // Pr(X_O = U)

  bool passes() const { return cond_a && cond_b && cond_c && cond_d; }
  bool consistent() const { return cond_a == cond_b && cond_b == cond_c && cond_c == cond_d; }
};

/// Pr(X_O = U | w) = lhs differs from Pr(X_O = U | w') = rhs.
struct CarViolation {
  std::size_t observation;
  WorldIndex world;
  WorldIndex other;
  Rational lhs;
  Rational rhs;
};

struct CarCheckReport {
  std::vector<ObservationCheck> per_observation;
  std::vector<CarViolation> witnesses;
  bool overall = true;
};

/// Evaluates all four conditions independently for every observation.
CarCheckReport check_car(const JointDistribution& d);

bool is_pairwise_disjoint(const ObservationSet& obs);

/// For a non-disjoint observation set, a joint that fails CAR: a world w0 in
/// two observations U, U' is only ever reported as U', while a world of U
/// outside U' is reported as U.  Returns nullopt for disjoint sets.
std::optional<JointDistribution> non_car_joint(const WorldSpace& space, const ObservationSet& obs);

struct GammaSolution {
  enum class Kind { NoSolution, NoNonnegativeSolution, Unique, Family, FromDistribution };

  Kind kind = Kind::NoSolution;
  RationalVector gamma;                      // a nonnegative solution when one exists
  std::vector<RationalVector> nullspace;     // Family only
  std::vector<std::size_t> support_rows;     // FromDistribution: atoms with positive mass
  std::optional<bool> equation_holds;        // FromDistribution: S' gamma = 1
};

const char* to_string(GammaSolution::Kind kind);

/// gamma_j = Pr(X_O = U_j | X_W in U_j), or 0 when Pr(X_W in U_j) = 0.
GammaSolution gamma_from_distribution(const JointDistribution& d);

/// Solves S' gamma = 1 restricted to gamma >= 0.
GammaSolution solve_gamma(const RationalMatrix& s_prime);

/// The CAR joint with Pr(X_O = U_j | X_W in A_i) = gamma_j for every selected
/// atom A_i inside U_j.  P_W must give positive mass to exactly the selected
/// atoms.  Throws InfeasibleGamma or SupportMismatch.
JointDistribution construct_car_distribution(const ObservationSet& obs, const CarMatrix& s,
                                             const std::vector<std::size_t>& rows,
                                             const RationalVector& gamma,
                                             const NaiveDistribution& pw);

struct Blocker {
  std::vector<std::size_t> rows;  // atom indices
  DependenceCertificate certificate;
};

struct BlockerSearchOptions {
  /// Enumerate every row subset when the matrix has at most this many rows;
  /// otherwise try pairs, triples and the full set.
  std::size_t full_enumeration_limit = 12;
};

/// Row subsets that cannot all carry positive mass under CAR.  Affine
/// nonnegative witnesses additionally require Pr(X_O = U_{j*}) > 0.  Only
/// subset-minimal witnesses are reported (per witness kind and column).  An
/// empty result means no blocker among the tried subsets, not that CAR is
/// feasible.
std::vector<Blocker> detect_blockers(const CarMatrix& s, const BlockerSearchOptions& opts = {});

/// Pr(X_O = U_j) forced for every CAR joint with the given atom masses, when
/// the selected rows are n linearly independent rows.  Throws SingularMatrix,
/// or SupportMismatch when P_W is not positive on the selected atoms.
RationalVector forced_observation_distribution(const ObservationSet& obs, const CarMatrix& s,
                                               const std::vector<std::size_t>& rows,
                                               const NaiveDistribution& pw);

/// Atom indices with positive mass under P_W.
std::vector<std::size_t> support_rows(const CarMatrix& s, const NaiveDistribution& pw);

}  // namespace carkit
