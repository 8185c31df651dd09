// Command-line front end: reads instance files, dispatches the solver and
// witness constructions, and prints deterministic JSON reports to stdout
// (human summary on stderr). Exit codes: 0 feasible/success, 1
// infeasible-with-certificate, 2 input error, 3 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "rnm/instance_io.hpp"
#include "rnm/rnm.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string instance_path;
  std::uint64_t seed = 0;
  double tolerance = -1.0;  // negative: per-command default
  unsigned jobs = 1;
  std::size_t samples = 10000;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rnm::SchemaError("/", "cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw rnm::SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  return j;
}

json atom_ids_json(const rnm::AtomSet& s) {
  json out = json::array();
  for (const auto& id : s.ids()) out.push_back(id);
  return out;
}

json real_l0_json(const rnm::L0Scalar<double>& v) { return rnm::l0_to_json(v); }

int emit(const std::string& command, std::uint64_t seed, const json* instance_echo,
         json result, int exit_code, const std::string& summary) {
  json report;
  report["command"] = command;
  report["seed"] = seed;
  if (instance_echo) report["instance"] = *instance_echo;
  report["result"] = std::move(result);
  std::cout << report.dump(2) << "\n";
  std::cerr << summary << "\n";
  return exit_code;
}

template <rnm::scalar_field K>
rnm::HellyInstance<K> build_helly_instance(const rnm::InstanceData<K>& data) {
  if (data.functionals.empty()) {
    throw rnm::SchemaError("/functionals", "at least one functional is required");
  }
  if (data.targets.size() != data.functionals.size()) {
    throw rnm::SchemaError("/targets", "need one target per functional");
  }
  if (!data.beta) throw rnm::SchemaError("/beta", "beta is required");
  rnm::L0Scalar<double> eps =
      data.epsilon ? *data.epsilon : rnm::L0Scalar<double>::one(data.space);
  return rnm::HellyInstance<K>(data.functionals, data.targets, *data.beta, eps);
}

template <rnm::scalar_field K>
json certificate_json(const rnm::HellyCertificate<K>& cert) {
  json lam = json::array();
  for (const auto& l : cert.lambda) lam.push_back(rnm::l0_to_json<K>(l));
  return json{{"lambda", lam}, {"violation_atoms", atom_ids_json(cert.violation_set)}};
}

template <rnm::scalar_field K>
int cmd_check_or_solve(bool want_solution, const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  rnm::HellyInstance<K> inst = build_helly_instance<K>(data);
  rnm::HellyOptions ho;
  ho.tol = opts.tolerance > 0.0 ? opts.tolerance : rnm::kHellyTol;
  ho.jobs = opts.jobs;
  rnm::HellyVerdict<K> verdict =
      want_solution ? rnm::solve<K>(inst, ho) : rnm::check_condition<K>(inst, ho);

  json result;
  result["feasible"] = verdict.feasible;
  result["analytic_sup"] = real_l0_json(verdict.analytic_sup);
  result["sup_infinite_atoms"] = atom_ids_json(verdict.sup_infinite);
  std::string summary;
  if (verdict.feasible) {
    result["budget_exact"] = verdict.within_budget_exact;
    if (verdict.solution) {
      result["solution"] = rnm::element_to_json<K>(*verdict.solution);
      result["solution_norm"] = real_l0_json(rnm::norm(*verdict.solution));
    }
    summary = want_solution
                  ? "feasible: minimum-norm solution meets every equation within budget"
                  : "feasible: the Helly condition holds on every atom";
    if (verdict.within_budget_exact) summary += " (||x|| <= beta with no slack)";
  } else {
    result["certificate"] = certificate_json<K>(*verdict.certificate);
    summary = "infeasible: dual certificate violates the condition on atoms ";
    for (const auto& id : verdict.certificate->violation_set.ids()) summary += id + " ";
  }
  json echo = rnm::instance_to_json<K>(data);
  return emit(want_solution ? "solve" : "check", opts.seed, &echo, std::move(result),
              verdict.feasible ? 0 : 1, summary);
}

template <rnm::scalar_field K>
int cmd_separate(const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  if (!data.body_g) throw rnm::SchemaError("/bodies/G", "body G is required");
  if (!data.body_m) throw rnm::SchemaError("/bodies/M", "body M is required");
  json echo = rnm::instance_to_json<K>(data);
  try {
    rnm::Separation<K> sep = rnm::separate<K>(*data.body_g, *data.body_m);
    json result;
    result["separable"] = true;
    result["H_atoms"] = atom_ids_json(sep.h);
    result["riesz"] = rnm::element_to_json<K>(sep.functional.riesz());
    result["sup_G"] = real_l0_json(sep.sup_first);
    result["inf_M"] = real_l0_json(sep.inf_second);
    result["margin"] = real_l0_json(sep.inf_second - sep.sup_first);
    return emit("separate", opts.seed, &echo, std::move(result), 0,
                "separable on H with the closest-point functional");
  } catch (const rnm::NoSeparationError& e) {
    json result;
    result["separable"] = false;
    result["H_atoms"] = json::array();
    result["message"] = e.what();
    return emit("separate", opts.seed, &echo, std::move(result), 1, e.what());
  }
}

template <rnm::scalar_field K>
int cmd_stratify(const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  if (data.functionals.empty()) {
    throw rnm::SchemaError("/functionals", "at least one functional is required");
  }
  double pivot = opts.tolerance > 0.0 ? opts.tolerance : rnm::kDefaultPivotTol;
  rnm::Stratification<K> strat = rnm::quasi_free_stratification<K>(
      std::span<const rnm::RandomFunctional<K>>(data.functionals), pivot);

  json result;
  json ranks = json::array();
  for (std::size_t r : strat.atom_rank) ranks.push_back(r);
  result["ranks"] = ranks;
  json parts = json::array();
  for (std::size_t i = 0; i < strat.parts.size(); ++i) {
    if (strat.parts[i].empty() && i > 0) continue;
    parts.push_back({{"rank", i}, {"atoms", atom_ids_json(strat.parts[i])}});
  }
  result["parts"] = parts;
  json groups = json::array();
  for (const auto& g : strat.groups) {
    groups.push_back({{"atoms", atom_ids_json(g.atoms)}, {"selected", g.selected}});
  }
  result["groups"] = groups;
  json bases = json::array();
  for (std::size_t i = 1; i < strat.bases.size(); ++i) {
    if (strat.bases[i].empty()) continue;
    json fs = json::array();
    for (const auto& b : strat.bases[i]) fs.push_back(rnm::element_to_json<K>(b.riesz()));
    bases.push_back({{"rank", i}, {"functionals", fs}});
  }
  result["bases"] = bases;
  json echo = rnm::instance_to_json<K>(data);
  return emit("stratify", opts.seed, &echo, std::move(result), 0,
              "quasi-free stratification computed");
}

template <rnm::scalar_field K>
int cmd_gauge(const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  if (!data.body_b) throw rnm::SchemaError("/bodies/B", "body B is required");
  if (!data.point) throw rnm::SchemaError("/x", "element x is required");
  rnm::L0Scalar<double> values = rnm::gauge<K>(*data.body_b, *data.point);
  json result;
  result["values"] = real_l0_json(values);
  json echo = rnm::instance_to_json<K>(data);
  return emit("gauge", opts.seed, &echo, std::move(result), 0,
              "gauge (Minkowski functional) evaluated atom-wise");
}

template <rnm::scalar_field K>
int cmd_goldstine(const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  if (data.functionals.empty()) {
    throw rnm::SchemaError("/functionals", "at least one functional is required");
  }
  if (data.targets.size() != data.functionals.size()) {
    throw rnm::SchemaError("/targets", "need one target per functional");
  }
  if (!data.epsilon) throw rnm::SchemaError("/epsilon", "epsilon is required");
  json echo = rnm::instance_to_json<K>(data);

  rnm::HellyOptions ho;
  ho.tol = opts.tolerance > 0.0 ? opts.tolerance : rnm::kHellyTol;
  ho.jobs = opts.jobs;
  rnm::HellyInstance<K> unit_ball_check(data.functionals, data.targets,
                                        rnm::L0Scalar<double>::one(data.space),
                                        *data.epsilon);
  rnm::HellyVerdict<K> verdict = rnm::check_condition<K>(unit_ball_check, ho);
  if (!verdict.feasible) {
    json result;
    result["realizable"] = false;
    result["certificate"] = certificate_json<K>(*verdict.certificate);
    return emit("goldstine", opts.seed, &echo, std::move(result), 1,
                "targets are not realizable in the unit bidual ball");
  }
  rnm::BidualTarget<K> bt(data.functionals, data.targets);
  rnm::RNElement<K> witness = rnm::goldstine_witness<K>(bt, *data.epsilon, ho);
  json result;
  result["realizable"] = true;
  result["witness"] = rnm::element_to_json<K>(witness);
  result["witness_norm"] = real_l0_json(rnm::norm(witness));
  json errors = json::array();
  double max_err = 0.0;
  for (std::size_t i = 0; i < bt.functionals.size(); ++i) {
    rnm::L0Scalar<double> err =
        rnm::abs(rnm::evaluate(bt.functionals[i], witness) - bt.targets[i]);
    for (std::size_t a = 0; a < err.size(); ++a) max_err = std::max(max_err, err.at(a));
    errors.push_back(real_l0_json(err));
  }
  result["errors"] = errors;
  result["max_error"] = max_err;
  return emit("goldstine", opts.seed, &echo, std::move(result), 0,
              "witness in the unit ball matches the targets within epsilon");
}

template <rnm::scalar_field K>
int cmd_exclude(const json& jin, const CommonOpts& opts) {
  rnm::InstanceData<K> data = rnm::parse_instance<K>(jin);
  if (data.functionals.empty()) {
    throw rnm::SchemaError("/functionals", "the functional g is required");
  }
  const rnm::RandomFunctional<K>& g = data.functionals.front();
  rnm::ExclusionCertificate<K> cert = rnm::excluding_neighborhood<K>(g);

  rnm::Rng rng(opts.seed);
  std::size_t admitted = 0;
  for (std::size_t s = 0; s < opts.samples; ++s) {
    rnm::RandomFunctional<K> h(
        rnm::sample_unit_ball_element<K>(rng, g.space(), g.dim()));
    if (rnm::in_eps_lambda_nbhd<K>(h, g, cert.nbhd)) ++admitted;
  }

  json result;
  result["excess_atoms"] = atom_ids_json(cert.excess_set);
  result["delta"] = cert.delta;
  result["anchor"] = rnm::element_to_json<K>(cert.anchor);
  result["eps"] = cert.nbhd.eps;
  result["lam"] = cert.nbhd.lam;
  result["sampled_unit_ball_functionals"] = opts.samples;
  result["admitted"] = admitted;
  json echo = rnm::instance_to_json<K>(data);
  return emit("exclude", opts.seed, &echo, std::move(result), 0,
              "excluding neighborhood built; admitted " + std::to_string(admitted) +
                  " of " + std::to_string(opts.samples) + " unit-ball samples");
}

int cmd_counterexample(const CommonOpts& opts) {
  rnm::CounterexampleReport report =
      rnm::counterexample_check(1000, 50, 20, opts.seed);
  json result;
  result["condition"] = {{"trials", report.condition_trials},
                         {"exact", report.condition_exact}};
  result["structural"] = {{"depth", report.structural_depth},
                          {"no_finite_solution", report.no_finite_solution}};
  json trunc = json::array();
  for (const auto& t : report.truncations) {
    trunc.push_back({{"last_index", t.last_index},
                     {"feasible", t.feasible},
                     {"all_ones_pattern", t.all_ones_pattern}});
  }
  result["truncations"] = trunc;
  result["passed"] = report.passed();
  if (!report.passed()) {
    return emit("counterexample", opts.seed, nullptr, std::move(result), 3,
                "counterexample regression FAILED");
  }
  return emit("counterexample", opts.seed, nullptr, std::move(result), 1,
              "condition holds with equality yet no finite-support solution exists; "
              "all finite truncations are feasible");
}

json laws_json(const std::vector<rnm::LawResult>& laws, bool* all_ok) {
  json out = json::array();
  for (const auto& l : laws) {
    if (!l.passed()) *all_ok = false;
    out.push_back({{"name", l.name},
                   {"trials", l.trials},
                   {"failures", l.failures},
                   {"max_violation", l.max_violation}});
  }
  return out;
}

int cmd_axioms(const json* jin, const CommonOpts& opts, bool samples_given) {
  rnm::AxiomSuiteConfig cfg;
  cfg.seed = opts.seed;
  cfg.samples = samples_given ? opts.samples : 1000;
  json result;
  bool all_ok = true;
  if (jin) {
    // space size and dim come from the instance file
    rnm::Field field = rnm::parse_field_tag(*jin);
    if (field == rnm::Field::real) {
      rnm::InstanceData<double> data = rnm::parse_instance<double>(*jin);
      cfg.atoms = data.space->size();
      cfg.dim = data.dim;
      result["real"] = laws_json(rnm::run_axiom_suite<double>(cfg), &all_ok);
    } else {
      rnm::InstanceData<std::complex<double>> data =
          rnm::parse_instance<std::complex<double>>(*jin);
      cfg.atoms = data.space->size();
      cfg.dim = data.dim;
      result["complex"] = laws_json(
          rnm::run_axiom_suite<std::complex<double>>(cfg), &all_ok);
    }
  } else {
    result["real"] = laws_json(rnm::run_axiom_suite<double>(cfg), &all_ok);
    result["complex"] = laws_json(
        rnm::run_axiom_suite<std::complex<double>>(cfg), &all_ok);
  }
  result["passed"] = all_ok;
  return emit("axioms", opts.seed, nullptr, std::move(result), all_ok ? 0 : 3,
              all_ok ? "all axiom suites passed" : "axiom suite FAILURES detected");
}

template <typename Handler>
int dispatch_field(const json& jin, Handler&& handler) {
  rnm::Field field = rnm::parse_field_tag(jin);
  if (field == rnm::Field::real) {
    return handler.template operator()<double>();
  }
  return handler.template operator()<std::complex<double>>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rnm: random linear equations, separation and density witnesses "
               "over atomic probability spaces"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<CLI::App*> subs;
  auto add_common = [&](CLI::App* sub, bool needs_instance) {
    auto* o = sub->add_option("--instance", opts.instance_path, "instance JSON file");
    if (needs_instance) o->required();
    sub->add_option("--seed", opts.seed, "sampler seed")->capture_default_str();
    sub->add_option("--tolerance", opts.tolerance,
                    "rank/consistency tolerance override");
    sub->add_option("--jobs", opts.jobs, "atom-parallel worker count")
        ->capture_default_str();
    sub->add_option("--samples", opts.samples, "sample count for oracles")
        ->capture_default_str();
    subs.push_back(sub);
    return sub;
  };

  CLI::App* c_check = add_common(app.add_subcommand("check", "decide the Helly condition"), true);
  CLI::App* c_solve = add_common(app.add_subcommand("solve", "solve the random linear system"), true);
  CLI::App* c_separate = add_common(app.add_subcommand("separate", "separate two convex bodies"), true);
  CLI::App* c_stratify = add_common(app.add_subcommand("stratify", "quasi-free stratification"), true);
  CLI::App* c_gauge = add_common(app.add_subcommand("gauge", "Minkowski functional of a body"), true);
  CLI::App* c_goldstine = add_common(app.add_subcommand("goldstine", "density witness in the unit ball"), true);
  CLI::App* c_exclude = add_common(app.add_subcommand("exclude", "unit-ball exclusion certificate"), true);
  CLI::App* c_counter = add_common(app.add_subcommand("counterexample", "finite-support counterexample report"), false);
  CLI::App* c_axioms = add_common(app.add_subcommand("axioms", "run the module axiom property suites"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_counter->parsed()) return cmd_counterexample(opts);
    if (c_axioms->parsed()) {
      const bool samples_given = c_axioms->count("--samples") > 0;
      if (opts.instance_path.empty()) return cmd_axioms(nullptr, opts, samples_given);
      json jin = load_json(opts.instance_path);
      return cmd_axioms(&jin, opts, samples_given);
    }
    json jin = load_json(opts.instance_path);
    if (c_check->parsed() || c_solve->parsed()) {
      bool want_solution = c_solve->parsed();
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_check_or_solve<K>(want_solution, jin, opts);
      });
    }
    if (c_separate->parsed()) {
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_separate<K>(jin, opts);
      });
    }
    if (c_stratify->parsed()) {
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_stratify<K>(jin, opts);
      });
    }
    if (c_gauge->parsed()) {
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_gauge<K>(jin, opts);
      });
    }
    if (c_goldstine->parsed()) {
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_goldstine<K>(jin, opts);
      });
    }
    if (c_exclude->parsed()) {
      return dispatch_field(jin, [&]<rnm::scalar_field K>() {
        return cmd_exclude<K>(jin, opts);
      });
    }
    std::cerr << "no command selected\n";
    return 2;
  } catch (const rnm::SchemaError& e) {
    json err{{"error", {{"type", "schema"}, {"path", e.path()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const rnm::PreconditionError& e) {
    json err{{"error", {{"type", "precondition"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const rnm::DomainError& e) {
    json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
