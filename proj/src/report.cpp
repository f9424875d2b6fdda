#include "carkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "carkit/car.hpp"
#include "carkit/errors.hpp"
#include "carkit/linalg.hpp"

namespace carkit {

const char* to_string(Analysis a) {
  switch (a) {
    case Analysis::CarCheck: return "car-check";
    case Analysis::Feasibility: return "feasibility";
    case Analysis::CargenRoundtrip: return "cargen-roundtrip";
    case Analysis::Jeffrey: return "jeffrey";
    case Analysis::Gcar: return "gcar";
    case Analysis::Mre: return "mre";
    case Analysis::CompareUpdates: return "compare-updates";
  }
  return "?";
}

std::vector<Analysis> all_analyses() {
  return {Analysis::CarCheck, Analysis::Feasibility, Analysis::CargenRoundtrip, Analysis::Jeffrey,
          Analysis::Gcar,     Analysis::Mre,         Analysis::CompareUpdates};
}

Analysis parse_analysis(const std::string& name) {
  for (Analysis a : all_analyses())
    if (name == to_string(a)) return a;
  throw CarkitError(ErrorCode::InvalidInput, "unknown analysis '" + name + "'");
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string list(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string list(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json dist_json(const WorldSpace& space, const RationalVector& v) {
  Json o = Json::object();
  for (WorldIndex w = 0; w < space.size(); ++w) o[space.name(w)] = to_string(v[w]);
  return o;
}

Json dist_json(const WorldSpace& space, const std::vector<double>& v) {
  Json o = Json::object();
  for (WorldIndex w = 0; w < space.size(); ++w) o[space.name(w)] = v[w];
  return o;
}

std::string row_text(const WorldSpace& space, const std::vector<std::string>& cells) {
  std::string s;
  for (WorldIndex w = 0; w < space.size(); ++w) s += "  " + space.name(w) + "=" + cells[w];
  return s;
}

std::string row_text(const WorldSpace& space, const RationalVector& v) {
  std::vector<std::string> c;
  for (const auto& x : v) c.push_back(to_string(x));
  return row_text(space, c);
}

std::string row_text(const WorldSpace& space, const std::vector<double>& v) {
  std::vector<std::string> c;
  for (double x : v) c.push_back(fmt(x));
  return row_text(space, c);
}

std::vector<double> doubles(const RationalVector& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

double event_mass(const Event& e, const std::vector<double>& p) {
  double s = 0;
  for (WorldIndex w : e.members()) s += p[w];
  return s;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

[[noreturn]] void inapplicable(const Scenario& s, Analysis a, const std::string& why) {
  throw CarkitError(ErrorCode::InapplicableAnalysis, std::string(to_string(a)) + " does not apply to '" +
                                                         s.name + "': " + why);
}

std::vector<PartitionConstraint> partition_constraints(const std::vector<ConstraintSpec>& cs) {
  std::vector<PartitionConstraint> out;
  for (const auto& c : cs)
    if (const auto* p = std::get_if<PartitionConstraint>(&c)) out.push_back(*p);
  return out;
}

std::vector<LinearConstraint> all_linear(const std::vector<ConstraintSpec>& cs, std::size_t n) {
  std::vector<LinearConstraint> out;
  for (const auto& c : cs) {
    auto part = to_linear(c, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

struct Text {
  std::ostringstream os;
  void line(const std::string& s) { os << s << '\n'; }
};

// ---------------------------------------------------------------------------

Report car_check_report(const Scenario& s) {
  const JointDistribution& d = *s.joint;
  const ObservationSet& obs = d.observations();
  const CarCheckReport r = check_car(d);
  const RationalVector po = marginal_obs(d);
  const NaiveDistribution pw = marginal_world(d);
  Report out;
  Text t;
  t.line("car-check: " + s.name);
  Json jo = Json::array();
  for (std::size_t j = 0; j < obs.size(); ++j) {
    const auto& c = r.per_observation[j];
    t.line("  " + obs[j].label() + " " + obs[j].describe(s.space) + "  Pr=" + to_string(po[j]) +
           "  a:" + yes_no(c.cond_a) + " b:" + yes_no(c.cond_b) + " c:" + yes_no(c.cond_c) +
           " d:" + yes_no(c.cond_d));
    Json e{{"label", obs[j].label()},
           {"members", obs[j].describe(s.space)},
           {"probability", to_string(po[j])},
           {"a", c.cond_a},
           {"b", c.cond_b},
           {"c", c.cond_c},
           {"d", c.cond_d}};
    if (po[j] > 0) {
      const NaiveDistribution soph = condition_sophisticated(d, j);
      const NaiveDistribution naive = condition_naive(pw, obs[j]);
      t.line("    sophisticated:" + row_text(s.space, soph.masses()));
      t.line("    naive:        " + row_text(s.space, naive.masses()));
      for (const auto& q : s.queries)
        t.line("    P(" + q.label() + " | " + obs[j].label() + "): sophisticated " +
               to_string(soph.probability(q)) + ", naive " + to_string(naive.probability(q)));
      e["sophisticated"] = dist_json(s.space, soph.masses());
      e["naive"] = dist_json(s.space, naive.masses());
    }
    jo.push_back(e);
  }
  Json jw = Json::array();
  if (r.overall) {
    t.line("  CAR holds");
  } else {
    for (const auto& v : r.witnesses) {
      t.line("  CAR fails; witness U=" + obs[v.observation].describe(s.space) + ": " + to_string(v.lhs) +
             " vs " + to_string(v.rhs) + " (Pr(X_O=U | " + s.space.name(v.world) + ") vs Pr(X_O=U | " +
             s.space.name(v.other) + "))");
      jw.push_back(Json{{"observation", obs[v.observation].label()},
                        {"members", obs[v.observation].describe(s.space)},
                        {"world", s.space.name(v.world)},
                        {"other", s.space.name(v.other)},
                        {"lhs", to_string(v.lhs)},
                        {"rhs", to_string(v.rhs)}});
    }
  }
  out.json = Json{{"analysis", "car-check"}, {"scenario", s.name}, {"car", r.overall},
                  {"observations", jo}, {"witnesses", jw}};
  out.text = t.os.str();
  return out;
}

std::vector<std::size_t> independent_rows(const RationalMatrix& m, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> chosen;
  for (std::size_t r : rows) {
    auto trial = chosen;
    trial.push_back(r);
    if (rank(m.select_rows(trial)) == trial.size()) chosen = std::move(trial);
  }
  return chosen;
}

Report feasibility_report(const Scenario& s) {
  const ObservationSet& obs = *s.observations;
  const CarMatrix full = build_matrix(compute_atoms(s.space, obs), obs);
  const auto pw = s.world_distribution();
  std::vector<std::size_t> rows;
  if (pw) {
    rows = support_rows(full, *pw);
  } else {
    for (std::size_t i = 0; i < full.atoms.size(); ++i) rows.push_back(i);
  }
  Report out;
  Text t;
  t.line("feasibility: " + s.name);
  Json jatoms = Json::array();
  for (std::size_t i = 0; i < full.atoms.size(); ++i) {
    const auto& a = full.atoms.atoms[i];
    std::string r;
    for (std::size_t j = 0; j < obs.size(); ++j) r += to_string(full.matrix(i, j)) + (j + 1 < obs.size() ? " " : "");
    const bool in = std::find(rows.begin(), rows.end(), i) != rows.end();
    t.line("  A" + std::to_string(i + 1) + " " + a.members.describe(s.space) + "  [" + r + "]" +
           (in ? "" : "  (no prior mass)"));
    jatoms.push_back(Json{{"atom", "A" + std::to_string(i + 1)},
                          {"members", a.members.describe(s.space)},
                          {"row", to_json(full.matrix.row(i))},
                          {"selected", in}});
  }
  Json j{{"analysis", "feasibility"}, {"scenario", s.name}, {"atoms", jatoms}};
  if (rows.empty()) {
    t.line("  no atom carries prior mass");
    j["gamma"] = Json{{"kind", "NoSolution"}};
    out.json = j;
    out.text = t.os.str();
    return out;
  }

  CarMatrix sub{full.atoms, full.matrix.select_rows(rows)};
  sub.atoms.atoms.clear();
  for (std::size_t r : rows) sub.atoms.atoms.push_back(full.atoms.atoms[r]);
  const GammaSolution g = solve_gamma(sub.matrix);
  Json jg{{"kind", to_string(g.kind)}};
  if (!g.gamma.empty()) jg["gamma"] = to_json(g.gamma);
  if (!g.nullspace.empty()) {
    Json ns = Json::array();
    for (const auto& v : g.nullspace) ns.push_back(to_json(v));
    jg["nullspace"] = ns;
  }
  switch (g.kind) {
    case GammaSolution::Kind::Unique:
      t.line("  unique gamma=" + list(g.gamma));
      break;
    case GammaSolution::Kind::Family:
      t.line("  gamma family of dimension " + std::to_string(g.nullspace.size()) + "; one solution " + list(g.gamma));
      break;
    case GammaSolution::Kind::NoNonnegativeSolution:
      t.line("  S' gamma = 1 has no nonnegative solution: no CAR distribution with this support");
      break;
    default:
      t.line("  S' gamma = 1 has no solution: no CAR distribution with this support");
      break;
  }
  j["gamma"] = jg;

  if (pw && g.kind == GammaSolution::Kind::Unique) {
    const auto indep = independent_rows(full.matrix, rows);
    if (indep.size() == obs.size()) {
      const RationalVector po = forced_observation_distribution(obs, full, indep, *pw);
      t.line("  P_O forced: " + list(po));
      j["forced_observation_distribution"] = to_json(po);
    }
  }

  Json jb = Json::array();
  for (const auto& b : detect_blockers(sub)) {
    std::vector<std::string> names;
    std::string atoms;
    for (std::size_t k = 0; k < b.rows.size(); ++k) {
      names.push_back("A" + std::to_string(rows[b.rows[k]] + 1));
      atoms += (k ? "," : "") + names.back();
    }
    std::string line = "  blocker {" + atoms + "}: " + to_string(b.certificate.kind) + " lambda=" +
                       list(b.certificate.coefficients) + " combination=" + list(b.certificate.combination);
    Json e{{"atoms", names},
           {"kind", to_string(b.certificate.kind)},
           {"lambda", to_json(b.certificate.coefficients)},
           {"combination", to_json(b.certificate.combination)}};
    if (b.certificate.witness_column) {
      line += " column " + obs[*b.certificate.witness_column].label();
      e["column"] = obs[*b.certificate.witness_column].label();
    }
    t.line(line);
    jb.push_back(e);
  }
  if (jb.empty()) t.line("  no blocker among the tried atom subsets");
  j["blockers"] = jb;
  out.json = j;
  out.text = t.os.str();
  return out;
}

Report cargen_report(const Scenario& s, const ReportOptions& opts) {
  const JointDistribution& d = *s.joint;
  Report out;
  Text t;
  t.line("cargen-roundtrip: " + s.name);
  Json j{{"analysis", "cargen-roundtrip"}, {"scenario", s.name}};
  if (!check_car(d).overall) {
    t.line("  CAR fails: no mechanism setting reproduces this joint");
    j["car"] = false;
    out.json = j;
    out.text = t.os.str();
    return out;
  }
  j["car"] = true;
  const CarGenParams p = synthesize_params(d);
  const JointDistribution back = closed_form_distribution(p, d.observations());
  const bool exact = same_runs(back, d);
  t.line("  synthesized " + std::to_string(p.partitions.size()) + " two-cell partitions, q=" + to_string(p.q));
  t.line(std::string("  closed form reproduces the joint exactly: ") + yes_no(exact));
  j["params"] = params_to_json(p);
  j["roundtrip_exact"] = exact;

  const auto plain = find_plain_cargen_params(d);
  t.line(std::string("  rejection-free parameters exist: ") + yes_no(plain.has_value()));
  j["rejection_free"] = plain ? params_to_json(*plain) : Json(nullptr);

  const SimulationResult sim = simulate(p, opts.samples, opts.seed);
  const double tv = total_variation(sim, back);
  t.line("  simulation: n=" + std::to_string(opts.samples) + " seed=" + std::to_string(opts.seed) +
         " TV=" + fmt(tv) + " mean passes=" + fmt(sim.mean_iterations()) + " (expected " +
         fmt(1.0 / (1.0 - to_double(p.q))) + ")");
  j["simulation"] = Json{{"samples", sim.samples},
                         {"seed", opts.seed},
                         {"total_variation", tv},
                         {"mean_iterations", sim.mean_iterations()},
                         {"expected_mean_iterations", 1.0 / (1.0 - to_double(p.q))},
                         {"max_iterations", sim.max_iterations}};
  out.json = j;
  out.text = t.os.str();
  return out;
}

Report gcar_report(const Scenario& s) {
  const ProbJointDistribution& d = *s.constraint_joint;
  Report out;
  Text t;
  t.line("gcar: " + s.name);
  const AccuracyReport acc = check_accuracy(d);
  t.line(std::string("  accurate: ") + yes_no(acc.overall));
  Json jacc = Json::array();
  for (const auto& v : acc.witnesses) {
    const auto& c = d.constraints()[v.constraint];
    t.line("    " + c.label + " cell " + c.cells[v.cell].describe(s.space) + ": " + to_string(v.actual) +
           " vs alpha " + to_string(v.expected));
    jacc.push_back(Json{{"constraint", c.label},
                        {"cell", c.cells[v.cell].describe(s.space)},
                        {"actual", to_string(v.actual)},
                        {"alpha", to_string(v.expected)}});
  }
  const RationalVector pc = d.marginal_constraints();
  Json jcells = Json::array();
  for (std::size_t i = 0; i < d.constraints().size(); ++i) {
    const auto& c = d.constraints()[i];
    t.line("  " + c.label + " = " + describe(c, s.space) + "  Pr=" + to_string(pc[i]));
    for (std::size_t k = 0; k < c.cells.size(); ++k) {
      const GcarCheck g = check_generalized_car(d, i, k);
      std::string line = "    cell " + c.cells[k].describe(s.space) + "  a:" + yes_no(g.cond_a) +
                         " b:" + yes_no(g.cond_b);
      Json e{{"constraint", c.label}, {"cell", c.cells[k].describe(s.space)}, {"a", g.cond_a}, {"b", g.cond_b}};
      if (g.b_pair) {
        line += "  Pr(C | " + s.space.name(g.b_pair->first) + ")=" + to_string(g.b_lhs) + " vs Pr(C | " +
                s.space.name(g.b_pair->second) + ")=" + to_string(g.b_rhs);
        e["witness"] = Json{{"world", s.space.name(g.b_pair->first)},
                            {"other", s.space.name(g.b_pair->second)},
                            {"lhs", to_string(g.b_lhs)},
                            {"rhs", to_string(g.b_rhs)}};
      }
      t.line(line);
      jcells.push_back(e);
    }
  }
  const bool all = generalized_car_all_cells(d);
  t.line(std::string("  generalized CAR for every constraint and cell: ") + yes_no(all));
  out.json = Json{{"analysis", "gcar"}, {"scenario", s.name}, {"accurate", acc.overall},
                  {"accuracy_witnesses", jacc}, {"cells", jcells}, {"all_cells", all}};
  out.text = t.os.str();
  return out;
}

Report jeffrey_core(const std::string& name, const NaiveDistribution& prior,
                    const std::vector<PartitionConstraint>& cs, const std::vector<Event>& queries) {
  const WorldSpace& space = prior.space();
  Report out;
  Text t;
  t.line("jeffrey: " + name);
  t.line("  prior:" + row_text(space, prior.masses()));
  Json ju = Json::array();
  for (const auto& c : cs) {
    const NaiveDistribution post = jeffrey_update(prior, c);
    t.line("  on " + describe(c, space) + ":");
    t.line("    posterior:" + row_text(space, post.masses()));
    Json e{{"constraint", describe(c, space)}, {"posterior", dist_json(space, post.masses())}};
    Json jq = Json::object();
    for (const auto& q : queries) {
      t.line("    P(" + q.label() + "): " + to_string(prior.probability(q)) + " -> " + to_string(post.probability(q)));
      jq[q.label()] = to_string(post.probability(q));
    }
    if (!queries.empty()) e["queries"] = jq;
    ju.push_back(e);
  }
  out.json = Json{{"analysis", "jeffrey"}, {"scenario", name}, {"prior", dist_json(space, prior.masses())},
                  {"updates", ju}};
  out.text = t.os.str();
  return out;
}

const char* direction(double before, double after) {
  if (std::abs(after - before) < 1e-12) return "unchanged";
  return after > before ? "increased" : "decreased";
}

Report mre_core(const std::string& name, const NaiveDistribution& prior, const std::vector<ConstraintSpec>& cs,
                const std::vector<Event>& queries) {
  const WorldSpace& space = prior.space();
  const auto linear = all_linear(cs, space.size());
  const MreSolution sol = mre_update(prior, linear);
  const std::vector<double> p = to_doubles(prior);
  Report out;
  Text t;
  t.line("mre: " + name);
  for (const auto& c : cs) t.line("  constraint " + describe(c, space));
  t.line("  prior:    " + row_text(space, prior.masses()));
  t.line("  posterior:" + row_text(space, sol.posterior));
  t.line("  beta=" + list(sol.tilt.beta) + " Z=" + fmt(sol.tilt.z) + " iterations=" + std::to_string(sol.iterations));
  const double kl = relative_entropy(sol.posterior, p);
  t.line("  relative entropy to prior: " + fmt(kl) + " bits");
  Json jq = Json::object();
  for (const auto& q : queries) {
    const double before = event_mass(q, p), after = event_mass(q, sol.posterior);
    t.line("  P(" + q.label() + "): " + fmt(before) + " -> " + fmt(after) + " (" + direction(before, after) + ")");
    jq[q.label()] = Json{{"prior", before}, {"posterior", after}, {"change", direction(before, after)}};
  }
  Json jr = Json::array();
  for (double r : sol.residuals) jr.push_back(r);
  out.json = Json{{"analysis", "mre"},
                  {"scenario", name},
                  {"prior", dist_json(space, prior.masses())},
                  {"posterior", dist_json(space, sol.posterior)},
                  {"beta", sol.tilt.beta},
                  {"z", sol.tilt.z},
                  {"residuals", jr},
                  {"relative_entropy_bits", kl},
                  {"queries", jq}};
  out.text = t.os.str();
  return out;
}

// Jeffrey counterpart of a single constraint: the partition it induces, with
// mass outside the constrained region kept at the prior.
std::optional<PartitionConstraint> jeffrey_counterpart(const ConstraintSpec& c, const NaiveDistribution& prior) {
  const std::size_t n = prior.space().size();
  if (const auto* p = std::get_if<PartitionConstraint>(&c)) return *p;
  if (const auto* w = std::get_if<WeightedEventConstraint>(&c)) {
    if (w->events.size() != 1) return std::nullopt;
    const Event rest = w->events[0].complement(n);
    if (rest.empty()) return std::nullopt;
    return PartitionConstraint{{w->events[0], rest}, {w->alpha[0], 1 - w->alpha[0]}, {}};
  }
  if (const auto* k = std::get_if<ConditionalConstraint>(&c)) {
    const Event in = k->event.intersect(k->given);
    const Event out = k->given.minus(k->event);
    const Event rest = k->given.complement(n);
    if (in.empty() || out.empty()) return std::nullopt;
    const Rational pv = prior.probability(k->given);
    PartitionConstraint pc{{in, out}, {k->alpha * pv, (1 - k->alpha) * pv}, {}};
    if (!rest.empty()) {
      pc.cells.push_back(rest);
      pc.alpha.push_back(1 - pv);
    }
    return pc;
  }
  return std::nullopt;
}

Report compare_report(const Scenario& s) {
  const NaiveDistribution prior = *s.world_distribution();
  const std::vector<double> p = to_doubles(prior);
  Report out;
  Text t;
  t.line("compare-updates: " + s.name);
  Json rows = Json::array();

  const auto add = [&](const std::string& obs, const std::string& method, const std::vector<double>& v,
                       const std::optional<std::vector<double>>& reference) {
    std::string line = "    " + method;
    line.resize(std::max<std::size_t>(line.size(), 19), ' ');
    line += row_text(s.space, v);
    Json e{{"observation", obs}, {"method", method}, {"distribution", dist_json(s.space, v)}};
    if (reference) {
      double diff = 0;
      for (std::size_t w = 0; w < v.size(); ++w) diff = std::max(diff, std::abs(v[w] - (*reference)[w]));
      const bool agrees = diff < 1e-9;
      line += agrees ? "  = sophisticated" : "  differs by " + fmt_g(diff);
      e["agrees_with_sophisticated"] = agrees;
    }
    for (const auto& q : s.queries) line += "  P(" + q.label() + ")=" + fmt(event_mass(q, v));
    t.line(line);
    rows.push_back(e);
  };

  if (s.kind == ScenarioKind::EventObservation) {
    const JointDistribution& d = *s.joint;
    const RationalVector po = marginal_obs(d);
    for (std::size_t j = 0; j < d.observations().size(); ++j) {
      if (po[j] == 0) continue;
      const Event& u = d.observations()[j];
      t.line("  observe " + u.label() + " " + u.describe(s.space) + ":");
      const auto soph = doubles(condition_sophisticated(d, j).masses());
      add(u.label(), "sophisticated", soph, std::nullopt);
      add(u.label(), "naive", doubles(condition_naive(prior, u).masses()), soph);
      const Event rest = u.complement(s.space.size());
      PartitionConstraint pc{{u}, {Rational(1)}, {}};
      if (!rest.empty()) {
        pc.cells.push_back(rest);
        pc.alpha.push_back(0);
      }
      add(u.label(), "jeffrey", doubles(jeffrey_update(prior, pc).masses()), soph);
      // P(U) = 1 is met only on the boundary; the minimizer is the prior restricted to U.
      add(u.label(), "mre", doubles(condition_naive(prior, u).masses()), soph);
    }
  } else {
    const auto linear = all_linear(s.constraints, s.space.size());
    std::optional<std::vector<double>> soph;
    if (s.constraint_joint && s.constraint_joint->constraints().size() == 1)
      soph = doubles(s.constraint_joint->posterior(0).masses());
    const auto partitions = partition_constraints(s.constraints);
    if (s.kind == ScenarioKind::PartitionConstraint && partitions.size() > 1) {
      // Alternative observations: one comparison per constraint.
      const ProbJointDistribution* d = s.constraint_joint ? &*s.constraint_joint : nullptr;
      for (std::size_t i = 0; i < partitions.size(); ++i) {
        const auto& c = partitions[i];
        if (d && d->marginal_constraints()[i] == 0) continue;
        const std::string label = c.label.empty() ? "C" + std::to_string(i + 1) : c.label;
        t.line("  observe " + label + " = " + describe(c, s.space) + ":");
        std::optional<std::vector<double>> post;
        if (d) {
          post = doubles(d->posterior(i).masses());
          add(label, "sophisticated", *post, std::nullopt);
        }
        add(label, "jeffrey", doubles(jeffrey_update(prior, c).masses()), post);
        add(label, "mre", mre_update(prior, to_linear(c, s.space.size())).posterior, post);
      }
    } else {
      t.line("  observe all constraints:");
      if (soph) add("all", "sophisticated", *soph, std::nullopt);
      add("all", "prior", p, soph);
      if (s.constraints.size() == 1)
        if (auto pc = jeffrey_counterpart(s.constraints[0], prior))
          add("all", "jeffrey", doubles(jeffrey_update(prior, *pc).masses()), soph);
      add("all", "mre", mre_update(prior, linear).posterior, soph);
    }
  }
  out.json = Json{{"analysis", "compare-updates"}, {"scenario", s.name}, {"rows", rows}};
  out.text = t.os.str();
  return out;
}

}  // namespace

bool is_applicable(const Scenario& s, Analysis a) {
  switch (a) {
    case Analysis::CarCheck:
    case Analysis::CargenRoundtrip:
      return s.joint.has_value();
    case Analysis::Feasibility:
      return s.observations.has_value();
    case Analysis::Jeffrey:
      return s.world_distribution() && !partition_constraints(s.constraints).empty();
    case Analysis::Gcar:
      return s.constraint_joint.has_value();
    case Analysis::Mre:
      return s.world_distribution() && !s.constraints.empty();
    case Analysis::CompareUpdates:
      return s.world_distribution() && (s.joint || !s.constraints.empty());
  }
  return false;
}

std::vector<Analysis> applicable_analyses(const Scenario& s) {
  std::vector<Analysis> out;
  for (Analysis a : all_analyses())
    if (is_applicable(s, a)) out.push_back(a);
  return out;
}

Report run_report(const Scenario& s, Analysis a, const ReportOptions& opts) {
  if (!is_applicable(s, a)) {
    switch (a) {
      case Analysis::CarCheck:
      case Analysis::CargenRoundtrip: inapplicable(s, a, "needs a joint over event observations");
      case Analysis::Feasibility: inapplicable(s, a, "needs event observations");
      case Analysis::Jeffrey: inapplicable(s, a, "needs a prior and a partition constraint");
      case Analysis::Gcar: inapplicable(s, a, "needs a joint over constraint observations");
      case Analysis::Mre: inapplicable(s, a, "needs a prior and constraints");
      case Analysis::CompareUpdates: inapplicable(s, a, "needs a prior and observations");
    }
  }
  switch (a) {
    case Analysis::CarCheck: return car_check_report(s);
    case Analysis::Feasibility: return feasibility_report(s);
    case Analysis::CargenRoundtrip: return cargen_report(s, opts);
    case Analysis::Jeffrey:
      return jeffrey_core(s.name, *s.world_distribution(), partition_constraints(s.constraints), s.queries);
    case Analysis::Gcar: return gcar_report(s);
    case Analysis::Mre: {
      if (s.kind != ScenarioKind::PartitionConstraint || s.constraints.size() < 2)
        return mre_core(s.name, *s.world_distribution(), s.constraints, s.queries);
      // Partition constraints are alternative observations; each updates the prior alone.
      Report out;
      Json updates = Json::array();
      for (const auto& c : s.constraints) {
        const Report r = mre_core(s.name, *s.world_distribution(), {c}, s.queries);
        if (!out.text.empty()) out.text += "\n";
        out.text += r.text;
        updates.push_back(r.json);
      }
      out.json = Json{{"analysis", "mre"}, {"scenario", s.name}, {"updates", updates}};
      return out;
    }
    case Analysis::CompareUpdates: return compare_report(s);
  }
  return {};
}

Report run_all(const Scenario& s, const ReportOptions& opts) {
  Report out;
  out.json = Json{{"scenario", s.name}, {"reports", Json::array()}};
  for (Analysis a : applicable_analyses(s)) {
    Report r = run_report(s, a, opts);
    if (!out.text.empty()) out.text += "\n";
    out.text += r.text;
    out.json["reports"].push_back(r.json);
  }
  return out;
}

Report params_report(const CarGenParams& p, const ReportOptions& opts) {
  Report out;
  Text t;
  t.line("cargen");
  const auto violations = validate_params(p);
  Json jv = Json::array();
  for (const auto& v : violations) {
    t.line("  invalid: " + v);
    jv.push_back(v);
  }
  Json j{{"analysis", "cargen"}, {"valid", violations.empty()}, {"violations", jv}};
  if (!violations.empty()) {
    out.json = j;
    out.text = t.os.str();
    return out;
  }
  const WorldSpace& space = p.prior.space();
  const JointDistribution d = closed_form_distribution(p);
  const bool car = check_car(d).overall;
  t.line("  valid; q=" + to_string(p.q));
  t.line("  exact output distribution:");
  Json jd = Json::array();
  for (const auto& e : d.entries()) {
    const Event& u = d.observations()[e.observation];
    t.line("    (" + space.name(e.world) + ", " + u.describe(space) + ") " + to_string(e.mass));
    jd.push_back(Json{{"world", space.name(e.world)}, {"obs", u.describe(space)}, {"p", to_string(e.mass)}});
  }
  t.line(std::string("  CAR holds: ") + yes_no(car));
  const SimulationResult sim = simulate(p, opts.samples, opts.seed);
  const double tv = total_variation(sim, d);
  t.line("  simulation: n=" + std::to_string(opts.samples) + " seed=" + std::to_string(opts.seed) + " TV=" + fmt(tv) +
         " mean passes=" + fmt(sim.mean_iterations()) + " (expected " + fmt(1.0 / (1.0 - to_double(p.q))) + ")");
  j["q"] = to_string(p.q);
  j["distribution"] = jd;
  j["car"] = car;
  j["simulation"] = Json{{"samples", sim.samples},
                         {"seed", opts.seed},
                         {"total_variation", tv},
                         {"mean_iterations", sim.mean_iterations()},
                         {"expected_mean_iterations", 1.0 / (1.0 - to_double(p.q))},
                         {"max_iterations", sim.max_iterations}};
  out.json = j;
  out.text = t.os.str();
  return out;
}

Scenario synthesize_scenario(const Scenario& s, const RationalVector& gamma,
                             const std::optional<NaiveDistribution>& prior) {
  if (!s.observations) throw CarkitError(ErrorCode::InvalidInput, "synthesis needs event observations");
  const auto pw = prior ? prior : s.world_distribution();
  if (!pw) throw CarkitError(ErrorCode::InvalidInput, "synthesis needs a prior");
  if (!(pw->space() == s.space)) throw CarkitError(ErrorCode::InvalidInput, "prior is over different worlds");
  const ObservationSet& obs = *s.observations;
  const CarMatrix m = build_matrix(compute_atoms(s.space, obs), obs);
  const auto rows = support_rows(m, *pw);
  RationalVector g = gamma;
  if (g.empty()) {
    if (rows.empty()) throw CarkitError(ErrorCode::SupportMismatch, "no atom carries prior mass");
    const GammaSolution sol = solve_gamma(m.matrix.select_rows(rows));
    if (sol.gamma.empty())
      throw CarkitError(ErrorCode::InfeasibleGamma, "no nonnegative gamma solves S' gamma = 1 on the prior's support");
    g = sol.gamma;
  }
  Scenario out = s;
  out.name = s.name + "-car";
  out.prior = *pw;
  out.joint = construct_car_distribution(obs, m, rows, g, *pw);
  return out;
}

Report jeffrey_report(const Scenario& s, const std::vector<ConstraintSpec>& constraints) {
  const auto prior = s.world_distribution();
  if (!prior) throw CarkitError(ErrorCode::InvalidInput, "the scenario has no prior");
  std::vector<PartitionConstraint> pcs;
  for (const auto& c : constraints) {
    auto pc = jeffrey_counterpart(c, *prior);
    if (!pc || std::holds_alternative<LinearConstraint>(c))
      throw CarkitError(ErrorCode::InvalidInput, "Jeffrey conditioning needs a partition constraint");
    pcs.push_back(*pc);
  }
  return jeffrey_core(s.name, *prior, pcs, s.queries);
}

Report mre_report(const Scenario& s, const std::vector<ConstraintSpec>& constraints) {
  const auto prior = s.world_distribution();
  if (!prior) throw CarkitError(ErrorCode::InvalidInput, "the scenario has no prior");
  return mre_core(s.name, *prior, constraints, s.queries);
}

}  // namespace carkit
