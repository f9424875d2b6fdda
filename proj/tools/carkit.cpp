// carkit: command-line front end.
//
// Exit codes: 0 the analysis ran (whatever its verdict), 2 invalid input,
// 3 an infeasible or undefined operation was requested.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "carkit/errors.hpp"
#include "carkit/report.hpp"
#include "carkit/scenario.hpp"

namespace {

using namespace carkit;

enum class Format { Text, Json };

struct Options {
  std::string format = "text";
  std::string file;
  std::string constraint_file;
  std::string gamma;
  std::string prior;
  std::string name;
  std::string param;
  std::string analysis;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  bool dump = false;
};

RationalVector parse_list(const std::string& text) {
  RationalVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw CarkitError(ErrorCode::InvalidInput, "empty entry in '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

void emit(const Report& r, Format f) {
  if (f == Format::Json) {
    std::cout << r.json.dump(2) << '\n';
  } else {
    std::cout << r.text;
  }
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(load_json_file(path)); }

int run(const std::string& command, const Options& o) {
  const Format f = o.format == "json" ? Format::Json : Format::Text;
  ReportOptions ro{o.samples, o.seed};

  if (command == "check") {
    emit(run_report(load_scenario(o.file), Analysis::CarCheck, ro), f);
  } else if (command == "feasibility") {
    emit(run_report(load_scenario(o.file), Analysis::Feasibility, ro), f);
  } else if (command == "report") {
    const Scenario s = load_scenario(o.file);
    emit(o.analysis.empty() ? run_all(s, ro) : run_report(s, parse_analysis(o.analysis), ro), f);
  } else if (command == "synthesize") {
    const Scenario s = load_scenario(o.file);
    std::optional<NaiveDistribution> prior;
    if (!o.prior.empty()) prior = NaiveDistribution(s.space, parse_list(o.prior));
    const RationalVector gamma = o.gamma.empty() ? RationalVector{} : parse_list(o.gamma);
    const Scenario out = synthesize_scenario(s, gamma, prior);
    if (f == Format::Json) {
      std::cout << scenario_to_json(out).dump(2) << '\n';
    } else {
      std::cout << "synthesized joint for " << s.name << ":\n";
      for (const auto& e : out.joint->entries())
        std::cout << "  (" << out.space.name(e.world) << ", " << out.joint->observations()[e.observation].label()
                  << ") " << to_string(e.mass) << '\n';
      std::cout << run_report(out, Analysis::CarCheck, ro).text;
    }
  } else if (command == "cargen") {
    emit(params_report(params_from_json(load_json_file(o.file)), ro), f);
  } else if (command == "jeffrey" || command == "mre") {
    const Scenario s = load_scenario(o.file);
    const auto cs = constraints_from_json(load_json_file(o.constraint_file), s.space);
    emit(command == "jeffrey" ? jeffrey_report(s, cs) : mre_report(s, cs), f);
  } else if (command == "puzzle") {
    std::optional<Rational> param;
    if (!o.param.empty()) param = parse_rational(o.param);
    const Scenario s = builtin(o.name, param);
    if (o.dump) {
      std::cout << scenario_to_json(s).dump(2) << '\n';
    } else {
      emit(o.analysis.empty() ? run_all(s, ro) : run_report(s, parse_analysis(o.analysis), ro), f);
    }
  } else if (command == "list") {
    for (const auto& n : builtin_names()) std::cout << n << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarsening-at-random analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  const auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Simulation sample count");
    sub->add_option("--seed", o.seed, "Simulation seed");
  };

  auto* check = app.add_subcommand("check", "Check the CAR conditions of a scenario's joint");
  check->add_option("file", o.file, "Scenario JSON")->required();

  auto* feas = app.add_subcommand("feasibility", "Atoms, gamma equations and blockers of an observation set");
  feas->add_option("file", o.file, "Scenario JSON")->required();

  auto* report = app.add_subcommand("report", "Run one or all applicable analyses on a scenario file");
  report->add_option("file", o.file, "Scenario JSON")->required();
  report->add_option("--analysis", o.analysis, "Analysis name");
  add_run_options(report);

  auto* synth = app.add_subcommand("synthesize", "Build the CAR joint for given gamma and prior");
  synth->add_option("file", o.file, "Scenario JSON")->required();
  synth->add_option("--gamma", o.gamma, "Comma-separated gamma, one per observation");
  synth->add_option("--prior", o.prior, "Comma-separated prior, one per world");

  auto* cargen = app.add_subcommand("cargen", "Exact output and simulation of mechanism parameters");
  cargen->add_option("params", o.file, "Parameter JSON")->required();
  add_run_options(cargen);

  auto* jeffrey = app.add_subcommand("jeffrey", "Jeffrey update of a scenario's prior");
  jeffrey->add_option("file", o.file, "Scenario JSON")->required();
  jeffrey->add_option("--constraint", o.constraint_file, "Constraint JSON")->required();

  auto* mre = app.add_subcommand("mre", "Minimum relative entropy update of a scenario's prior");
  mre->add_option("file", o.file, "Scenario JSON")->required();
  mre->add_option("--constraint", o.constraint_file, "Constraint JSON")->required();

  auto* puzzle = app.add_subcommand("puzzle", "Run analyses on a builtin scenario");
  puzzle->add_option("name", o.name, "Scenario name")->required();
  puzzle->add_option("--param", o.param, "Scenario parameter, e.g. 1/2");
  puzzle->add_option("--analysis", o.analysis, "Analysis name");
  puzzle->add_flag("--dump", o.dump, "Print the scenario JSON instead of analysing it");
  add_run_options(puzzle);

  app.add_subcommand("list", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const CarkitError& e) {
    std::cerr << "carkit: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_input_error() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "carkit: " << e.what() << '\n';
    return 2;
  }
}
