#include "carkit/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "carkit/errors.hpp"

namespace carkit {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw CarkitError(ErrorCode::InvalidInput, msg); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& require_array(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
  return v;
}

std::vector<std::string> string_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of world names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad("world names must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Event event_from_json(const Json& j, const WorldSpace& space, std::string label = {}) {
  return Event::from_names(space, string_list(j), std::move(label));
}

Json event_to_json(const Event& e, const WorldSpace& space) {
  Json a = Json::array();
  for (WorldIndex w : e.members()) a.push_back(space.name(w));
  return a;
}

WorldSpace space_from_json(const Json& j) { return WorldSpace(string_list(require(j, "worlds"))); }

NaiveDistribution prior_from_json(const Json& j, const WorldSpace& space) {
  RationalVector m(space.size(), Rational(0));
  if (j.is_array()) {
    if (j.size() != space.size()) throw CarkitError(ErrorCode::DimensionMismatch, "prior needs one mass per world");
    for (std::size_t w = 0; w < j.size(); ++w) m[w] = rational_from_json(j[w]);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) m[space.index_of(it.key())] = rational_from_json(it.value());
  } else {
    bad("prior must be an object or an array");
  }
  return NaiveDistribution(space, std::move(m));
}

Json prior_to_json(const NaiveDistribution& p) {
  Json o = Json::object();
  for (WorldIndex w = 0; w < p.space().size(); ++w) o[p.space().name(w)] = rational_to_json(p[w]);
  return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Constraints

std::vector<LinearConstraint> to_linear(const ConstraintSpec& c, std::size_t world_count) {
  return std::visit(
      [&](const auto& x) -> std::vector<LinearConstraint> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PartitionConstraint>) {
          WeightedEventConstraint w{x.cells, x.alpha};
          return weighted_to_linear(w, world_count);
        } else if constexpr (std::is_same_v<T, WeightedEventConstraint>) {
          return weighted_to_linear(x, world_count);
        } else if constexpr (std::is_same_v<T, LinearConstraint>) {
          return {x};
        } else {
          return {conditional_to_linear(x.event, x.given, x.alpha, world_count)};
        }
      },
      c);
}

std::string describe(const ConstraintSpec& c, const WorldSpace& space) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PartitionConstraint>) {
          return "partition " + describe(x, space);
        } else if constexpr (std::is_same_v<T, WeightedEventConstraint>) {
          std::string s = "weighted ";
          for (std::size_t i = 0; i < x.events.size(); ++i)
            s += (i ? "; " : "") + to_string(x.alpha[i]) + " " + x.events[i].describe(space);
          return s;
        } else if constexpr (std::is_same_v<T, LinearConstraint>) {
          std::string s = "linear E[";
          bool first = true;
          for (WorldIndex w = 0; w < space.size(); ++w) {
            if (x.coefficients[w] == 0) continue;
            s += (first ? "" : " + ") + to_string(x.coefficients[w]) + "*" + space.name(w);
            first = false;
          }
          return s + "] = " + to_string(x.target);
        } else {
          return "conditional P(" + x.event.describe(space) + " | " + x.given.describe(space) +
                 ") = " + to_string(x.alpha);
        }
      },
      c);
}

ConstraintSpec constraint_from_json(const Json& j, const WorldSpace& space) {
  if (!j.is_object()) bad("a constraint must be an object");
  if (j.contains("cells")) {
    PartitionConstraint c;
    if (j.contains("label")) c.label = require_string(j, "label");
    for (const auto& cell : require_array(j, "cells")) {
      c.cells.push_back(event_from_json(require(cell, "members"), space));
      c.alpha.push_back(rational_from_json(require(cell, "alpha")));
    }
    c.validate(space);
    return c;
  }
  if (j.contains("terms")) {
    WeightedEventConstraint c;
    for (const auto& t : require_array(j, "terms")) {
      std::string label = t.contains("label") ? require_string(t, "label") : std::string();
      c.events.push_back(event_from_json(require(t, "members"), space, label));
      c.alpha.push_back(rational_from_json(require(t, "alpha")));
    }
    if (c.events.empty()) bad("weighted constraint has no terms");
    for (std::size_t i = 0; i < c.events.size(); ++i)
      if (c.events[i].empty()) bad("weighted constraint has an empty event");
    return c;
  }
  if (j.contains("coeffs")) {
    LinearConstraint c{RationalVector(space.size(), Rational(0)), rational_from_json(require(j, "target")),
                       j.contains("label") ? require_string(j, "label") : std::string("linear")};
    const Json& co = require(j, "coeffs");
    if (!co.is_object()) bad("'coeffs' must map world names to numbers");
    for (auto it = co.begin(); it != co.end(); ++it)
      c.coefficients[space.index_of(it.key())] = rational_from_json(it.value());
    if (is_zero_vector(c.coefficients)) bad("linear constraint has no nonzero coefficient");
    return c;
  }
  if (j.contains("given")) {
    ConditionalConstraint c{event_from_json(require(j, "event"), space),
                            event_from_json(require(j, "given"), space),
                            rational_from_json(require(j, "alpha"))};
    if (c.given.empty()) bad("conditional constraint has an empty 'given' event");
    if (c.alpha <= 0 || c.alpha >= 1) bad("conditional constraint needs alpha in (0,1)");
    return c;
  }
  bad("unrecognized constraint: expected 'cells', 'terms', 'coeffs' or 'given'");
}

Json constraint_to_json(const ConstraintSpec& c, const WorldSpace& space) {
  return std::visit(
      [&](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        Json o = Json::object();
        if constexpr (std::is_same_v<T, PartitionConstraint>) {
          if (!x.label.empty()) o["label"] = x.label;
          Json cells = Json::array();
          for (std::size_t i = 0; i < x.cells.size(); ++i)
            cells.push_back(Json{{"members", event_to_json(x.cells[i], space)},
                                 {"alpha", rational_to_json(x.alpha[i])}});
          o["cells"] = cells;
        } else if constexpr (std::is_same_v<T, WeightedEventConstraint>) {
          Json terms = Json::array();
          for (std::size_t i = 0; i < x.events.size(); ++i) {
            Json t = Json::object();
            if (!x.events[i].label().empty()) t["label"] = x.events[i].label();
            t["members"] = event_to_json(x.events[i], space);
            t["alpha"] = rational_to_json(x.alpha[i]);
            terms.push_back(t);
          }
          o["terms"] = terms;
        } else if constexpr (std::is_same_v<T, LinearConstraint>) {
          o["label"] = x.label;
          Json co = Json::object();
          for (WorldIndex w = 0; w < space.size(); ++w)
            if (x.coefficients[w] != 0) co[space.name(w)] = rational_to_json(x.coefficients[w]);
          o["coeffs"] = co;
          o["target"] = rational_to_json(x.target);
        } else {
          o["event"] = event_to_json(x.event, space);
          o["given"] = event_to_json(x.given, space);
          o["alpha"] = rational_to_json(x.alpha);
        }
        return o;
      },
      c);
}

std::vector<ConstraintSpec> constraints_from_json(const Json& j, const WorldSpace& space) {
  std::vector<ConstraintSpec> out;
  const Json& list = (j.is_object() && j.contains("constraints")) ? j["constraints"] : j;
  if (list.is_array()) {
    for (const auto& c : list) out.push_back(constraint_from_json(c, space));
  } else {
    out.push_back(constraint_from_json(list, space));
  }
  if (out.empty()) bad("no constraints given");
  return out;
}

// ---------------------------------------------------------------------------
// Rationals

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return parse_rational(j.dump());
  // The shortest round-trip text of the double, read as an exact decimal.
  if (j.is_number_float()) return parse_rational(j.dump());
  bad("expected a rational as a string or number, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------
// Scenarios

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::EventObservation: return "event-observation";
    case ScenarioKind::PartitionConstraint: return "partition-constraint";
    case ScenarioKind::WeightedConstraint: return "weighted-constraint";
  }
  return "?";
}

std::optional<NaiveDistribution> Scenario::world_distribution() const {
  if (prior) return prior;
  if (joint) return marginal_world(*joint);
  if (constraint_joint) return constraint_joint->marginal_world();
  return std::nullopt;
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) bad("a scenario must be a JSON object");
  Scenario s;
  s.name = j.contains("name") ? require_string(j, "name") : std::string("scenario");
  if (j.contains("description")) s.description = require_string(j, "description");
  s.space = space_from_json(j);

  const std::string kind = j.contains("kind") ? require_string(j, "kind") : std::string();
  if (kind.empty()) {
    s.kind = j.contains("constraint_joint") || (j.contains("constraints") && !j.contains("observations"))
                 ? ScenarioKind::WeightedConstraint
                 : ScenarioKind::EventObservation;
  } else if (kind == "event-observation") {
    s.kind = ScenarioKind::EventObservation;
  } else if (kind == "partition-constraint") {
    s.kind = ScenarioKind::PartitionConstraint;
  } else if (kind == "weighted-constraint") {
    s.kind = ScenarioKind::WeightedConstraint;
  } else {
    bad("unknown scenario kind '" + kind + "'");
  }

  if (j.contains("prior")) s.prior = prior_from_json(j["prior"], s.space);

  if (j.contains("observations")) {
    std::vector<Event> obs;
    for (const auto& o : require_array(j, "observations")) {
      if (o.is_array()) {
        obs.push_back(event_from_json(o, s.space));
      } else {
        std::string label = o.contains("label") ? require_string(o, "label") : std::string();
        obs.push_back(event_from_json(require(o, "members"), s.space, label));
      }
    }
    s.observations = ObservationSet(s.space, std::move(obs));
  }
  if (j.contains("joint")) {
    if (!s.observations) bad("'joint' requires 'observations'");
    std::vector<JointDistribution::Entry> entries;
    for (const auto& e : require_array(j, "joint"))
      entries.push_back({s.space.index_of(require_string(e, "world")),
                         s.observations->index_of(require_string(e, "obs")),
                         rational_from_json(require(e, "p"))});
    s.joint = JointDistribution::from_entries(s.space, *s.observations, entries);
  }

  if (j.contains("constraints")) s.constraints = constraints_from_json(j["constraints"], s.space);
  if (s.kind == ScenarioKind::PartitionConstraint)
    for (const auto& c : s.constraints)
      if (!std::holds_alternative<PartitionConstraint>(c))
        bad("a partition-constraint scenario may only hold partition constraints");

  if (j.contains("constraint_joint")) {
    std::vector<PartitionConstraint> pcs;
    for (std::size_t i = 0; i < s.constraints.size(); ++i) {
      const auto* pc = std::get_if<PartitionConstraint>(&s.constraints[i]);
      if (!pc) bad("'constraint_joint' requires partition constraints");
      pcs.push_back(*pc);
      if (pcs.back().label.empty()) pcs.back().label = "C" + std::to_string(i + 1);
    }
    if (pcs.empty()) bad("'constraint_joint' requires 'constraints'");
    RationalVector dense(s.space.size() * pcs.size(), Rational(0));
    for (const auto& e : require_array(j, "constraint_joint")) {
      const std::string label = require_string(e, "constraint");
      std::size_t i = 0;
      while (i < pcs.size() && pcs[i].label != label) ++i;
      if (i == pcs.size()) bad("unknown constraint label '" + label + "'");
      dense[s.space.index_of(require_string(e, "world")) * pcs.size() + i] += rational_from_json(require(e, "p"));
    }
    s.constraint_joint = ProbJointDistribution(s.space, std::move(pcs), std::move(dense));
  }

  if (j.contains("queries"))
    for (const auto& q : require_array(j, "queries"))
      s.queries.push_back(event_from_json(require(q, "members"), s.space, require_string(q, "label")));

  if (s.kind == ScenarioKind::EventObservation && !s.observations)
    bad("an event-observation scenario needs 'observations'");
  if (s.kind != ScenarioKind::EventObservation && s.constraints.empty())
    bad("a constraint scenario needs 'constraints'");
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json j = Json::object();
  j["name"] = s.name;
  j["kind"] = to_string(s.kind);
  if (!s.description.empty()) j["description"] = s.description;
  j["worlds"] = s.space.names();
  if (s.prior) j["prior"] = prior_to_json(*s.prior);
  if (s.observations) {
    Json obs = Json::array();
    for (const auto& o : s.observations->events())
      obs.push_back(Json{{"label", o.label()}, {"members", event_to_json(o, s.space)}});
    j["observations"] = obs;
  }
  if (s.joint) {
    Json entries = Json::array();
    for (const auto& e : s.joint->entries())
      entries.push_back(Json{{"world", s.space.name(e.world)},
                             {"obs", s.joint->observations()[e.observation].label()},
                             {"p", rational_to_json(e.mass)}});
    j["joint"] = entries;
  }
  if (!s.constraints.empty()) {
    Json cs = Json::array();
    for (const auto& c : s.constraints) cs.push_back(constraint_to_json(c, s.space));
    j["constraints"] = cs;
  }
  if (s.constraint_joint) {
    Json entries = Json::array();
    const auto& d = *s.constraint_joint;
    for (WorldIndex w = 0; w < s.space.size(); ++w)
      for (std::size_t i = 0; i < d.constraints().size(); ++i)
        if (d.mass(w, i) != 0)
          entries.push_back(Json{{"world", s.space.name(w)},
                                 {"constraint", d.constraints()[i].label},
                                 {"p", rational_to_json(d.mass(w, i))}});
    j["constraint_joint"] = entries;
  }
  if (!s.queries.empty()) {
    Json qs = Json::array();
    for (const auto& q : s.queries)
      qs.push_back(Json{{"label", q.label()}, {"members", event_to_json(q, s.space)}});
    j["queries"] = qs;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Mechanism parameters

CarGenParams params_from_json(const Json& j) {
  const WorldSpace space = space_from_json(j);
  CarGenParams p{j.contains("prior") ? prior_from_json(j["prior"], space) : NaiveDistribution::uniform(space),
                 {}, {}, {}, j.contains("q") ? rational_from_json(j["q"]) : Rational(0)};
  for (const auto& part : require_array(j, "partitions")) {
    std::vector<Event> cells;
    for (const auto& cell : require_array(part, "cells")) cells.push_back(event_from_json(cell, space));
    RationalVector reject;
    if (part.contains("reject")) {
      for (const auto& r : require_array(part, "reject")) reject.push_back(rational_from_json(r));
    } else {
      reject.assign(cells.size(), Rational(0));
    }
    p.partitions.push_back(std::move(cells));
    p.partition_weights.push_back(rational_from_json(require(part, "weight")));
    p.rejection.push_back(std::move(reject));
  }
  return p;
}

Json params_to_json(const CarGenParams& p) {
  const WorldSpace& space = p.prior.space();
  Json j = Json::object();
  j["worlds"] = space.names();
  j["prior"] = prior_to_json(p.prior);
  Json parts = Json::array();
  for (std::size_t k = 0; k < p.partitions.size(); ++k) {
    Json cells = Json::array();
    Json reject = Json::array();
    for (std::size_t c = 0; c < p.partitions[k].size(); ++c) {
      cells.push_back(event_to_json(p.partitions[k][c], space));
      reject.push_back(rational_to_json(p.rejection[k][c]));
    }
    parts.push_back(Json{{"weight", rational_to_json(p.partition_weights[k])}, {"cells", cells}, {"reject", reject}});
  }
  j["partitions"] = parts;
  j["q"] = rational_to_json(p.q);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

Rational tie_break(const std::optional<Rational>& param) {
  const Rational p = param.value_or(Rational(1, 2));
  if (p < 0 || p > 1) bad("the tie-break probability must lie in [0,1]");
  return p;
}

void reject_param(const std::string& name, const std::optional<Rational>& param) {
  if (param) bad("scenario '" + name + "' takes no parameter");
}

Scenario three_prisoners(const Rational& p) {
  Scenario s;
  s.name = "three-prisoners";
  s.description = "w_x: prisoner x is pardoned; p = Pr(jailer names b | a is pardoned)";
  s.space = WorldSpace({"w_a", "w_b", "w_c"});
  s.prior = NaiveDistribution::uniform(s.space);
  s.observations = ObservationSet(s.space, {Event::from_names(s.space, {"w_a", "w_c"}, "jailer-says-b"),
                                            Event::from_names(s.space, {"w_a", "w_b"}, "jailer-says-c")});
  const Rational third(1, 3);
  s.joint = JointDistribution::from_entries(
      s.space, *s.observations,
      {{0, 0, p * third}, {0, 1, (1 - p) * third}, {1, 1, third}, {2, 0, third}});
  s.queries = {Event::from_names(s.space, {"w_a"}, "a-pardoned")};
  return s;
}

Scenario monty_hall(const Rational& p) {
  Scenario s;
  s.name = "monty-hall";
  s.description = "contestant picks door 1; p = Pr(host opens door 3 | car behind door 1)";
  s.space = WorldSpace({"car1", "car2", "car3"});
  s.prior = NaiveDistribution::uniform(s.space);
  s.observations = ObservationSet(s.space, {Event::from_names(s.space, {"car1", "car2"}, "opens3"),
                                            Event::from_names(s.space, {"car1", "car3"}, "opens2")});
  const Rational third(1, 3);
  s.joint = JointDistribution::from_entries(
      s.space, *s.observations,
      {{0, 0, p * third}, {0, 1, (1 - p) * third}, {1, 0, third}, {2, 1, third}});
  s.queries = {Event::from_names(s.space, {"car1"}, "stay-wins")};
  return s;
}

Scenario example_4_2() {
  Scenario s;
  s.name = "example-4-2";
  s.description = "two overlapping observations; CAR needs Pr(w2) = 0 or a degenerate protocol";
  s.space = WorldSpace({"w1", "w2", "w3"});
  s.prior = NaiveDistribution::uniform(s.space);
  s.observations = ObservationSet(s.space, {Event::from_names(s.space, {"w1", "w2"}, "U1"),
                                            Event::from_names(s.space, {"w2", "w3"}, "U2")});
  return s;
}

Scenario example_4_5() {
  Scenario s;
  s.name = "example-4-5";
  s.description = "three pairwise-overlapping observations over three atoms; gamma is forced";
  s.space = WorldSpace({"a1", "a2", "a3"});
  s.prior = NaiveDistribution::uniform(s.space);
  s.observations = ObservationSet(s.space, {Event::from_names(s.space, {"a2", "a3"}, "U1"),
                                            Event::from_names(s.space, {"a1", "a3"}, "U2"),
                                            Event::from_names(s.space, {"a1", "a2"}, "U3")});
  const Rational sixth(1, 6);
  s.joint = JointDistribution::from_entries(
      s.space, *s.observations,
      {{0, 1, sixth}, {0, 2, sixth}, {1, 0, sixth}, {1, 2, sixth}, {2, 0, sixth}, {2, 1, sixth}});
  return s;
}

Scenario mar(const std::optional<Rational>& param) {
  const Rational theta = param.value_or(Rational(1, 2));
  if (theta < 0 || theta > 1) bad("the missingness probability must lie in [0,1]");
  Scenario s;
  s.name = "mar";
  s.description = "value missing with probability theta regardless of the value";
  s.space = WorldSpace({"x1", "x2", "x3"});
  s.prior = NaiveDistribution(s.space, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  std::vector<Event> obs{Event::full(s.space, "missing")};
  for (WorldIndex w = 0; w < s.space.size(); ++w) obs.push_back(Event({w}, "saw-" + s.space.name(w)));
  s.observations = ObservationSet(s.space, std::move(obs));
  std::vector<JointDistribution::Entry> entries;
  for (WorldIndex w = 0; w < s.space.size(); ++w) {
    entries.push_back({w, 0, theta * (*s.prior)[w]});
    entries.push_back({w, w + 1, (1 - theta) * (*s.prior)[w]});
  }
  s.joint = JointDistribution::from_entries(s.space, *s.observations, entries);
  return s;
}

Scenario judy_benjamin() {
  Scenario s;
  s.name = "judy-benjamin";
  s.kind = ScenarioKind::WeightedConstraint;
  s.description = "Blue/Red army, HQ/Second company; told the odds are 3:1 for HQ if in Red territory";
  s.space = WorldSpace({"BH", "BS", "RH", "RS"});
  s.prior = NaiveDistribution::uniform(s.space);
  s.constraints = {ConditionalConstraint{Event::from_names(s.space, {"RH"}), Event::from_names(s.space, {"RH", "RS"}),
                                         Rational(3, 4)}};
  s.queries = {Event::from_names(s.space, {"BH", "BS"}, "Blue"), Event::from_names(s.space, {"RH", "RS"}, "Red")};
  return s;
}

Scenario gcar_sensor() {
  Scenario s;
  s.name = "gcar-sensor";
  s.kind = ScenarioKind::PartitionConstraint;
  s.description = "a reading picks a constraint, the constraint picks a cell, the cell picks a world";
  s.space = WorldSpace({"s1", "s2", "s3", "s4"});
  const Event u1 = Event::from_names(s.space, {"s1", "s2"}, "U1");
  const Event u2 = Event::from_names(s.space, {"s3", "s4"}, "U2");
  const PartitionConstraint c1{{u1, u2}, {Rational(3, 5), Rational(2, 5)}, "C1"};
  const PartitionConstraint c2{{u1, u2}, {Rational(1, 5), Rational(4, 5)}, "C2"};
  s.constraints = {c1, c2};
  const Rational half(1, 2);
  s.constraint_joint = construct_gcar_distribution(
      s.space, {c1, c2}, {half, half},
      {NaiveDistribution(s.space, {half, half, 0, 0}), NaiveDistribution(s.space, {0, 0, half, half})});
  s.queries = {u1};
  return s;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"monty-hall", "three-prisoners", "example-4-2", "example-4-5", "mar", "judy-benjamin", "gcar-sensor"};
}

Scenario builtin(const std::string& name, const std::optional<Rational>& param) {
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw CarkitError(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
  if (name == "three-prisoners") return three_prisoners(tie_break(param));
  if (name == "monty-hall") return monty_hall(tie_break(param));
  if (name == "mar") return mar(param);
  reject_param(name, param);
  if (name == "example-4-2") return example_4_2();
  if (name == "example-4-5") return example_4_5();
  if (name == "judy-benjamin") return judy_benjamin();
  if (name == "gcar-sensor") return gcar_sensor();
  throw CarkitError(ErrorCode::UnknownScenario, "unknown scenario '" + name + "'");
}

}  // namespace carkit
