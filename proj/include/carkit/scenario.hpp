#pragma once

// Scenario files, constraint and mechanism-parameter files, and the builtin
// puzzle corpus.  Rationals serialize as "n/d" strings; JSON numbers are
// read exactly from their decimal text.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "carkit/cargen.hpp"
#include "carkit/jeffrey.hpp"
#include "carkit/mre.hpp"
#include "carkit/prob_core.hpp"

namespace carkit {

using Json = nlohmann::ordered_json;

/// P(event | given) = alpha.
struct ConditionalConstraint {
  Event event;
  Event given;
  Rational alpha;
};

using ConstraintSpec =
    std::variant<PartitionConstraint, WeightedEventConstraint, LinearConstraint, ConditionalConstraint>;

std::vector<LinearConstraint> to_linear(const ConstraintSpec& c, std::size_t world_count);
std::string describe(const ConstraintSpec& c, const WorldSpace& space);

enum class ScenarioKind { EventObservation, PartitionConstraint, WeightedConstraint };

const char* to_string(ScenarioKind kind);

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::EventObservation;
  std::string description;
  WorldSpace space;
  std::optional<NaiveDistribution> prior;
  std::optional<ObservationSet> observations;           // event observations
  std::optional<JointDistribution> joint;               // over observations
  std::vector<ConstraintSpec> constraints;              // constraint observations
  std::optional<ProbJointDistribution> constraint_joint;
  std::vector<Event> queries;                           // events whose probability reports list

  /// The prior if given, else the world marginal of whichever joint is present.
  std::optional<NaiveDistribution> world_distribution() const;
};

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

/// Throws InvalidInput (or DimensionMismatch) on schema violations.
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& s);

ConstraintSpec constraint_from_json(const Json& j, const WorldSpace& space);
Json constraint_to_json(const ConstraintSpec& c, const WorldSpace& space);
/// A single constraint object or an array of them.
std::vector<ConstraintSpec> constraints_from_json(const Json& j, const WorldSpace& space);

/// {"worlds", "prior", "partitions":[{"weight","cells":[[...]],"reject":[...]}], "q"}.
CarGenParams params_from_json(const Json& j);
Json params_to_json(const CarGenParams& p);

/// Throws InvalidInput when the file cannot be read or parsed.
Json load_json_file(const std::string& path);

std::vector<std::string> builtin_names();
/// Throws UnknownScenario.  param is the host or jailer tie-break
/// probability for monty-hall and three-prisoners, the probability of
/// reporting the full space for mar; other scenarios reject it.
Scenario builtin(const std::string& name, const std::optional<Rational>& param = std::nullopt);

}  // namespace carkit
