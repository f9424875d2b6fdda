#pragma once

// Finite naive/sophisticated spaces.
//
// The naive space is a list of worlds.  A run of the sophisticated space is
// collapsed to a (world, observation) pair; a JointDistribution assigns exact
// rational mass to those pairs and enforces accuracy (mass only on pairs with
// world in observation).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carkit/rational.hpp"

namespace carkit {

using WorldIndex = std::size_t;

class WorldSpace {
 public:
  WorldSpace() = default;
  /// Throws InvalidInput when empty or when identifiers repeat.
  explicit WorldSpace(std::vector<std::string> worlds);

  std::size_t size() const { return worlds_.size(); }
  const std::string& name(WorldIndex w) const { return worlds_.at(w); }
  const std::vector<std::string>& names() const { return worlds_; }

  std::optional<WorldIndex> find(std::string_view name) const;
  /// Throws InvalidInput for unknown names.
  WorldIndex index_of(std::string_view name) const;

  friend bool operator==(const WorldSpace&, const WorldSpace&) = default;

 private:
  std::vector<std::string> worlds_;
};

/// A set of worlds, canonicalized to sorted unique indices.  Equality is by
/// member set; the label is display metadata.
class Event {
 public:
  Event() = default;
  explicit Event(std::vector<WorldIndex> members, std::string label = {});

  static Event from_names(const WorldSpace& space, const std::vector<std::string>& names,
                          std::string label = {});
  static Event full(const WorldSpace& space, std::string label = {});

  const std::vector<WorldIndex>& members() const { return members_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool contains(WorldIndex w) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  Event intersect(const Event& other) const;
  Event minus(const Event& other) const;
  Event unite(const Event& other) const;
  Event complement(std::size_t space_size) const;
  bool intersects(const Event& other) const;
  bool subset_of(const Event& other) const;

  /// "{a,b}" using world names.
  std::string describe(const WorldSpace& space) const;

  friend bool operator==(const Event& a, const Event& b) { return a.members_ == b.members_; }

 private:
  std::vector<WorldIndex> members_;
  std::string label_;
};

class ObservationSet {
 public:
  ObservationSet() = default;
  /// Every observation must be nonempty and inside the space; member sets and
  /// labels must be unique.  Missing labels are filled from the member names.
  ObservationSet(const WorldSpace& space, std::vector<Event> observations);

  std::size_t size() const { return observations_.size(); }
  const Event& operator[](std::size_t j) const { return observations_.at(j); }
  const std::vector<Event>& events() const { return observations_; }

  std::optional<std::size_t> find_label(std::string_view label) const;
  std::optional<std::size_t> find_members(const Event& e) const;
  /// Looks up by label first, then by member set.  Throws InvalidInput.
  std::size_t index_of(std::string_view label) const;

 private:
  std::vector<Event> observations_;
};

class NaiveDistribution {
 public:
  NaiveDistribution() = default;
  /// Throws InvalidInput unless masses are nonnegative and sum to exactly 1.
  NaiveDistribution(WorldSpace space, RationalVector mass);

  static NaiveDistribution uniform(WorldSpace space);

  const WorldSpace& space() const { return space_; }
  const Rational& operator[](WorldIndex w) const { return mass_.at(w); }
  const RationalVector& masses() const { return mass_; }
  Rational probability(const Event& e) const;

  friend bool operator==(const NaiveDistribution&, const NaiveDistribution&) = default;

 private:
  WorldSpace space_;
  RationalVector mass_;
};

class JointDistribution {
 public:
  struct Entry {
    WorldIndex world;
    std::size_t observation;
    Rational mass;
  };

  JointDistribution() = default;
  /// Dense row-major masses, world-major: mass[w * |O| + j].
  /// Throws InvalidInput on negative mass, mass off {(w,U): w in U}, or total != 1.
  JointDistribution(WorldSpace space, ObservationSet obs, RationalVector dense);
  /// Sparse form; repeated (w,U) keys accumulate.
  static JointDistribution from_entries(WorldSpace space, ObservationSet obs,
                                        const std::vector<Entry>& entries);

  const WorldSpace& space() const { return space_; }
  const ObservationSet& observations() const { return obs_; }
  const Rational& mass(WorldIndex w, std::size_t j) const { return mass_.at(w * obs_.size() + j); }
  const RationalVector& dense() const { return mass_; }

  /// Nonzero entries in (world, observation) order.
  std::vector<Entry> entries() const;

 private:
  WorldSpace space_;
  ObservationSet obs_;
  RationalVector mass_;
};

NaiveDistribution marginal_world(const JointDistribution& d);

/// Indexed like d.observations().
RationalVector marginal_obs(const JointDistribution& d);

/// Pr(X_W = . | X_O = U_j).  Throws ZeroProbabilityObservation.
NaiveDistribution condition_sophisticated(const JointDistribution& d, std::size_t observation);

/// Pr_W(. | U).  Throws ZeroProbabilityEvent.
NaiveDistribution condition_naive(const NaiveDistribution& p, const Event& u);

/// Pr(X_W in U) under the joint's world marginal.
Rational world_probability(const JointDistribution& d, const Event& u);

/// Same worlds (by name) and same positive mass on every (world, member set)
/// pair.  Observations carrying zero mass are ignored, as are labels.
bool same_runs(const JointDistribution& a, const JointDistribution& b);

}  // namespace carkit
