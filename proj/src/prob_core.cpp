#include "carkit/prob_core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "carkit/errors.hpp"

namespace carkit {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw CarkitError(ErrorCode::InvalidInput, msg); }

}  // namespace

// ---------------------------------------------------------------------------
// WorldSpace

WorldSpace::WorldSpace(std::vector<std::string> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.empty()) invalid("world space must be nonempty");
  std::set<std::string> seen;
  for (const auto& w : worlds_) {
    if (w.empty()) invalid("world identifiers must be nonempty");
    if (!seen.insert(w).second) invalid("duplicate world identifier '" + w + "'");
  }
}

std::optional<WorldIndex> WorldSpace::find(std::string_view name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<WorldIndex>(it - worlds_.begin());
}

WorldIndex WorldSpace::index_of(std::string_view name) const {
  if (auto w = find(name)) return *w;
  invalid("unknown world '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Event

Event::Event(std::vector<WorldIndex> members, std::string label)
    : members_(std::move(members)), label_(std::move(label)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Event Event::from_names(const WorldSpace& space, const std::vector<std::string>& names,
                        std::string label) {
  std::vector<WorldIndex> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(space.index_of(n));
  return Event(std::move(idx), std::move(label));
}

Event Event::full(const WorldSpace& space, std::string label) {
  std::vector<WorldIndex> idx(space.size());
  for (WorldIndex w = 0; w < space.size(); ++w) idx[w] = w;
  return Event(std::move(idx), std::move(label));
}

bool Event::contains(WorldIndex w) const {
  return std::binary_search(members_.begin(), members_.end(), w);
}

Event Event::intersect(const Event& other) const {
  std::vector<WorldIndex> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return Event(std::move(out));
}

Event Event::minus(const Event& other) const {
  std::vector<WorldIndex> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return Event(std::move(out));
}

Event Event::unite(const Event& other) const {
  std::vector<WorldIndex> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return Event(std::move(out));
}

Event Event::complement(std::size_t space_size) const {
  std::vector<WorldIndex> out;
  for (WorldIndex w = 0; w < space_size; ++w)
    if (!contains(w)) out.push_back(w);
  return Event(std::move(out));
}

bool Event::intersects(const Event& other) const { return !intersect(other).empty(); }

bool Event::subset_of(const Event& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::string Event::describe(const WorldSpace& space) const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ",";
    s += space.name(members_[i]);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// ObservationSet

ObservationSet::ObservationSet(const WorldSpace& space, std::vector<Event> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) invalid("observation set must be nonempty");
  std::set<std::string> labels;
  std::set<std::vector<WorldIndex>> member_sets;
  for (auto& e : observations_) {
    if (e.empty()) invalid("observations must be nonempty events");
    if (e.members().back() >= space.size()) invalid("observation refers to a world outside the space");
    if (e.label().empty()) e.set_label(e.describe(space));
    if (!labels.insert(e.label()).second) invalid("duplicate observation label '" + e.label() + "'");
    if (!member_sets.insert(e.members()).second)
      invalid("observation '" + e.label() + "' repeats the member set of another observation");
  }
}

std::optional<std::size_t> ObservationSet::find_label(std::string_view label) const {
  for (std::size_t j = 0; j < observations_.size(); ++j)
    if (observations_[j].label() == label) return j;
  return std::nullopt;
}

std::optional<std::size_t> ObservationSet::find_members(const Event& e) const {
  for (std::size_t j = 0; j < observations_.size(); ++j)
    if (observations_[j] == e) return j;
  return std::nullopt;
}

std::size_t ObservationSet::index_of(std::string_view label) const {
  if (auto j = find_label(label)) return *j;
  invalid("unknown observation '" + std::string(label) + "'");
}

// ---------------------------------------------------------------------------
// NaiveDistribution

NaiveDistribution::NaiveDistribution(WorldSpace space, RationalVector mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (mass_.size() != space_.size()) invalid("distribution size does not match world space");
  canonicalize(mass_);
  for (const auto& m : mass_)
    if (m < 0) invalid("negative probability mass");
  if (sum(mass_) != 1) invalid("probability masses sum to " + to_string(sum(mass_)) + ", not 1");
}

NaiveDistribution NaiveDistribution::uniform(WorldSpace space) {
  const std::size_t n = space.size();
  return NaiveDistribution(std::move(space), RationalVector(n, Rational(1, n)));
}

Rational NaiveDistribution::probability(const Event& e) const {
  Rational p = 0;
  for (WorldIndex w : e.members()) p += mass_.at(w);
  return p;
}

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution::JointDistribution(WorldSpace space, ObservationSet obs, RationalVector dense)
    : space_(std::move(space)), obs_(std::move(obs)), mass_(std::move(dense)) {
  if (obs_.size() == 0) invalid("joint distribution needs observations");
  canonicalize(mass_);
  if (mass_.size() != space_.size() * obs_.size()) invalid("joint mass table has the wrong size");
  Rational total = 0;
  for (WorldIndex w = 0; w < space_.size(); ++w) {
    for (std::size_t j = 0; j < obs_.size(); ++j) {
      const Rational& m = mass_[w * obs_.size() + j];
      if (m < 0) invalid("negative joint mass");
      if (m != 0 && !obs_[j].contains(w))
        invalid("inaccurate run: world '" + space_.name(w) + "' is not in observation '" +
                obs_[j].label() + "'");
      total += m;
    }
  }
  if (total != 1) invalid("joint masses sum to " + to_string(total) + ", not 1");
}

JointDistribution JointDistribution::from_entries(WorldSpace space, ObservationSet obs,
                                                  const std::vector<Entry>& entries) {
  RationalVector dense(space.size() * obs.size(), Rational(0));
  for (const auto& e : entries) {
    if (e.world >= space.size() || e.observation >= obs.size()) invalid("joint entry out of range");
    dense[e.world * obs.size() + e.observation] += e.mass;
  }
  return JointDistribution(std::move(space), std::move(obs), std::move(dense));
}

std::vector<JointDistribution::Entry> JointDistribution::entries() const {
  std::vector<Entry> out;
  for (WorldIndex w = 0; w < space_.size(); ++w)
    for (std::size_t j = 0; j < obs_.size(); ++j)
      if (mass(w, j) != 0) out.push_back({w, j, mass(w, j)});
  return out;
}

// ---------------------------------------------------------------------------
// Operations

NaiveDistribution marginal_world(const JointDistribution& d) {
  RationalVector m(d.space().size(), Rational(0));
  for (WorldIndex w = 0; w < m.size(); ++w)
    for (std::size_t j = 0; j < d.observations().size(); ++j) m[w] += d.mass(w, j);
  return NaiveDistribution(d.space(), std::move(m));
}

RationalVector marginal_obs(const JointDistribution& d) {
  RationalVector m(d.observations().size(), Rational(0));
  for (WorldIndex w = 0; w < d.space().size(); ++w)
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += d.mass(w, j);
  return m;
}

NaiveDistribution condition_sophisticated(const JointDistribution& d, std::size_t observation) {
  const Rational po = marginal_obs(d).at(observation);
  if (po == 0)
    throw CarkitError(ErrorCode::ZeroProbabilityObservation,
                      "observation '" + d.observations()[observation].label() +
                          "' has probability 0");
  RationalVector m(d.space().size());
  for (WorldIndex w = 0; w < m.size(); ++w) m[w] = d.mass(w, observation) / po;
  return NaiveDistribution(d.space(), std::move(m));
}

NaiveDistribution condition_naive(const NaiveDistribution& p, const Event& u) {
  const Rational pu = p.probability(u);
  if (pu == 0)
    throw CarkitError(ErrorCode::ZeroProbabilityEvent,
                      "event " + u.describe(p.space()) + " has probability 0");
  RationalVector m(p.space().size(), Rational(0));
  for (WorldIndex w : u.members()) m[w] = p[w] / pu;
  return NaiveDistribution(p.space(), std::move(m));
}

Rational world_probability(const JointDistribution& d, const Event& u) {
  Rational p = 0;
  for (WorldIndex w : u.members())
    for (std::size_t j = 0; j < d.observations().size(); ++j) p += d.mass(w, j);
  return p;
}

bool same_runs(const JointDistribution& a, const JointDistribution& b) {
  using Key = std::pair<std::string, std::set<std::string>>;
  auto table = [](const JointDistribution& d) {
    std::map<Key, Rational> t;
    for (const auto& e : d.entries()) {
      std::set<std::string> members;
      for (WorldIndex w : d.observations()[e.observation].members())
        members.insert(d.space().name(w));
      t[{d.space().name(e.world), std::move(members)}] += e.mass;
    }
    return t;
  };
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted(a.space().names()) == sorted(b.space().names()) && table(a) == table(b);
}

}  // namespace carkit
