#pragma once

// Analyses over scenarios, each rendered both as text and as JSON.
// Output depends only on the inputs and the seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carkit/scenario.hpp"

namespace carkit {

enum class Analysis { CarCheck, Feasibility, CargenRoundtrip, Jeffrey, Gcar, Mre, CompareUpdates };

const char* to_string(Analysis a);
/// Throws InvalidInput for unknown names.
Analysis parse_analysis(const std::string& name);
std::vector<Analysis> all_analyses();

struct ReportOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

struct Report {
  Json json;
  std::string text;
};

bool is_applicable(const Scenario& s, Analysis a);
std::vector<Analysis> applicable_analyses(const Scenario& s);

/// Throws InapplicableAnalysis when the scenario lacks what the analysis needs.
Report run_report(const Scenario& s, Analysis a, const ReportOptions& opts = {});

/// Every applicable analysis, concatenated.
Report run_all(const Scenario& s, const ReportOptions& opts = {});

/// Validation, exact output distribution, CAR check and simulation for
/// mechanism parameters.  Invalid parameters are reported, not thrown.
Report params_report(const CarGenParams& p, const ReportOptions& opts = {});

/// The CAR joint for the scenario's observations with the given gamma (or a
/// nonnegative solution when gamma is empty) and prior (or the scenario's
/// world distribution).  The result carries the joint.  Throws
/// InfeasibleGamma, SupportMismatch, SingularMatrix or InvalidInput.
Scenario synthesize_scenario(const Scenario& s, const RationalVector& gamma,
                             const std::optional<NaiveDistribution>& prior);

/// Jeffrey or MRE update of the scenario's world distribution on the given
/// constraints.  Throws UndefinedJeffrey, InfeasibleConstraints and friends.
Report jeffrey_report(const Scenario& s, const std::vector<ConstraintSpec>& constraints);
Report mre_report(const Scenario& s, const std::vector<ConstraintSpec>& constraints);

}  // namespace carkit
