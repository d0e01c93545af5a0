// drsdiag: run Douglas-Rachford / ADMM diagnostics on catalog or JSON problems

#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "drsdiag/acceptance.hpp"
#include "drsdiag/json_io.hpp"

namespace {

using namespace drsdiag;

struct RunConfig {
  std::string zoo_id;
  std::string problem_path;
  double gamma = 1.0;
  std::size_t max_iter = 100000;
  std::string z0_text;
  std::size_t stride = 1;
  std::string out_report;
  std::string out_trace;
  bool probes = false;
};

Vec parse_z0(const std::string& text, std::size_t dim) {
  if (text.empty()) return Vec::zeros(dim);
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) xs.push_back(std::stod(cell));
  if (xs.size() != dim) {
    throw InputError("--z0 expects " + std::to_string(dim) + " comma-separated values");
  }
  return Vec(std::move(xs));
}

struct LoadedProblem {
  std::variant<DrsPair, AdmmProblem> problem;
  std::optional<GroundTruth> truth;
  std::string name;
};

LoadedProblem load_problem(const RunConfig& cfg) {
  if (!cfg.zoo_id.empty()) {
    const ZooEntry* e = find_entry(cfg.zoo_id);
    if (!e) throw InputError("unknown catalog id: " + cfg.zoo_id);
    return {e->problem, e->truth, e->id};
  }
  std::ifstream in(cfg.problem_path);
  if (!in) throw InputError("cannot read problem file: " + cfg.problem_path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError("problem file is not valid JSON: " + std::string(ex.what()));
  }
  return {problem_from_json(j).problem, std::nullopt, cfg.problem_path};
}

json case_definitions_json() {
  json defs;
  for (CaseLabel c : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D, CaseLabel::E,
                      CaseLabel::F, CaseLabel::G}) {
    defs[case_label_name(c)] = case_definition(c);
  }
  return defs;
}

struct RunOutcome {
  json report;
  std::string trace_csv;
  CaseLabel label = CaseLabel::Undetermined;
  double objective_limit = std::nan("");
  double displacement_limit = std::nan("");
  double v_norm = std::nan("");
};

RunOutcome run_drs_problem(const DrsPair& p, const std::optional<GroundTruth>& truth,
                           const RunConfig& cfg, double gamma) {
  ProbeConfig probes;
  probes.domain_distances = cfg.probes;
  DrsTrace trace = run(p.f, p.g, gamma, parse_z0(cfg.z0_text, p.f.dim()), cfg.max_iter, probes);
  IdvEstimate idv = estimate_idv(trace);
  Diagnosis diag = classify(p.f, p.g, trace, idv, truth);

  RunOutcome out;
  out.label = diag.label;
  out.objective_limit = diag.objective.mean_over_tail;
  out.displacement_limit = diag.displacement_tail_mean;
  out.v_norm = std::max(norm(idv.v_from_slope), norm(idv.v_from_diff));

  out.report["kind"] = "drs";
  out.report["gamma"] = gamma;
  out.report["iterations"] = trace.iterations;
  out.report["converged"] = trace.converged;
  out.report["overflow"] = trace.overflow;
  out.report["diagnosis"] = diagnosis_to_json(diag);
  std::ostringstream csv;
  write_trace_csv(csv, trace, cfg.stride);
  out.trace_csv = csv.str();
  return out;
}

RunOutcome run_admm_problem(const AdmmProblem& p, const std::optional<GroundTruth>& truth,
                            const RunConfig& cfg, double gamma) {
  AdmmTrace trace = run_admm(p, gamma, {}, cfg.max_iter);
  ObjectiveStats st = admm_objective_stats(trace);
  RegularityReport reg = check_regularity(p);

  RunOutcome out;
  out.objective_limit = st.mean_over_tail;
  out.displacement_limit = trace.residual_tail_mean();

  out.report["kind"] = "admm";
  out.report["gamma"] = gamma;
  out.report["iterations"] = trace.iterations;
  out.report["converged"] = trace.converged;
  out.report["residual_tail_mean"] = trace.residual_tail_mean();
  out.report["residual_final"] = trace.residual_norms.back();
  out.report["objective"] = to_json(st);
  out.report["iterates_convergent"] = trace.iterates_convergent();
  out.report["regularity"] =
      reg.status == RegularityStatus::Satisfied
          ? "satisfied"
          : (reg.status == RegularityStatus::Violated ? "violated" : "undetermined");

  // when the constraint eliminates, diagnose the equivalent splitting run too
  try {
    ReducedPair rp = reduce_to_drs(p);
    DrsTrace rt = run(rp.f_tilde, rp.g_tilde, gamma, Vec::zeros(rp.f_tilde.dim()), cfg.max_iter);
    IdvEstimate idv = estimate_idv(rt);
    Diagnosis diag = classify(rp.f_tilde, rp.g_tilde, rt, idv, truth);
    out.label = diag.label;
    out.v_norm = std::max(norm(idv.v_from_slope), norm(idv.v_from_diff));
    out.report["reduced_diagnosis"] = diagnosis_to_json(diag);
  } catch (const CapabilityError&) {
    out.report["reduced_diagnosis"] = nullptr;  // elimination unsupported; direct run stands
  }

  std::ostringstream csv;
  write_trace_csv(csv, trace, cfg.stride);
  out.trace_csv = csv.str();
  return out;
}

RunOutcome run_once(const LoadedProblem& lp, const RunConfig& cfg, double gamma) {
  RunOutcome out = std::holds_alternative<DrsPair>(lp.problem)
                       ? run_drs_problem(std::get<DrsPair>(lp.problem), lp.truth, cfg, gamma)
                       : run_admm_problem(std::get<AdmmProblem>(lp.problem), lp.truth, cfg, gamma);
  out.report["schema"] = kSchemaVersion;
  out.report["problem"] = lp.name;
  out.report["max_iter"] = cfg.max_iter;
  out.report["case_definitions"] = case_definitions_json();
  if (lp.truth) {
    json gt;
    gt["p_star"] = lp.truth->p_star == kInf ? json("inf")
                                            : (lp.truth->p_star == -kInf ? json("-inf")
                                                                         : json(lp.truth->p_star));
    gt["d_star"] = lp.truth->d_star == kInf ? json("inf")
                                            : (lp.truth->d_star == -kInf ? json("-inf")
                                                                         : json(lp.truth->d_star));
    gt["case"] = case_label_name(lp.truth->label);
    out.report["ground_truth"] = gt;
  } else {
    out.report["ground_truth"] = nullptr;
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write: " + path);
  out << text;
}

int cmd_run(const RunConfig& cfg) {
  LoadedProblem lp = load_problem(cfg);
  RunOutcome out = run_once(lp, cfg, cfg.gamma);
  emit(out.report.dump(2) + "\n", cfg.out_report);
  if (!cfg.out_trace.empty()) emit(out.trace_csv, cfg.out_trace);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& gammas_text, const std::string& out_csv) {
  std::vector<double> gammas;
  std::stringstream ss(gammas_text);
  std::string cell;
  while (std::getline(ss, cell, ',')) gammas.push_back(std::stod(cell));
  if (gammas.empty()) throw InputError("--gammas expects a nonempty comma-separated grid");

  LoadedProblem lp = load_problem(cfg);
  std::vector<std::future<RunOutcome>> cells;
  cells.reserve(gammas.size());
  for (double g : gammas) {
    cells.push_back(std::async(std::launch::async,
                               [&lp, &cfg, g]() { return run_once(lp, cfg, g); }));
  }

  std::ostringstream csv;
  csv.precision(12);
  csv << "gamma,label,objective_limit,displacement_limit,v_norm,status\n";
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    csv << gammas[i] << ',';
    try {
      RunOutcome out = cells[i].get();
      csv << case_label_name(out.label) << ',' << out.objective_limit << ','
          << out.displacement_limit << ',' << out.v_norm << ",ok\n";
    } catch (const std::exception& ex) {
      csv << "undetermined,nan,nan,nan,error: " << ex.what() << "\n";
    }
  }
  emit(csv.str(), out_csv);
  return 0;
}

int cmd_zoo_list() {
  std::printf("%-22s %-6s %-12s %-12s %s\n", "id", "case", "p*", "d*", "source");
  for (const auto& e : catalog()) {
    auto val = [](double v) {
      if (v == kInf) return std::string("inf");
      if (v == -kInf) return std::string("-inf");
      std::ostringstream os;
      os.precision(6);
      os << v;
      return os.str();
    };
    std::printf("%-22s %-6s %-12s %-12s %s\n", e.id.c_str(),
                case_label_name(e.truth.label).c_str(), val(e.truth.p_star).c_str(),
                val(e.truth.d_star).c_str(), e.source.c_str());
  }
  return 0;
}

int cmd_zoo_verify(const acceptance::Options& opts) {
  auto results = acceptance::run_all(opts);
  bool ok = acceptance::print_table(std::cout, results);

  // per-entry summary over the criteria that exercise each catalog entry
  std::cout << "\nentry summary:\n";
  for (const auto& e : catalog()) {
    if (opts.only_entry && *opts.only_entry != e.id) continue;
    bool touched = false, entry_ok = true;
    for (const auto& r : results) {
      auto entries = acceptance::criterion_entries(r.id);
      if (std::find(entries.begin(), entries.end(), e.id) != entries.end()) {
        touched = true;
        entry_ok = entry_ok && r.passed;
      }
    }
    if (touched) std::cout << "  " << (entry_ok ? "PASS  " : "FAIL  ") << e.id << "\n";
  }
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford / ADMM pathology diagnostics"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string gammas_text, sweep_out;
  acceptance::Options verify_opts;
  std::string only_entry;
  int inject = 0;

  auto add_problem_flags = [&](CLI::App* sub) {
    sub->add_option("--zoo", cfg.zoo_id, "catalog entry id (see `zoo list`)");
    sub->add_option("--problem", cfg.problem_path, "path to a JSON problem file");
    sub->add_option("--gamma", cfg.gamma, "prox step parameter")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--z0", cfg.z0_text, "starting point, comma separated (default zeros)");
    sub->add_option("--stride", cfg.stride, "trace CSV record stride")->check(CLI::PositiveNumber);
    sub->add_option("--out-report", cfg.out_report, "write the report JSON here");
    sub->add_option("--out-trace", cfg.out_trace, "write the trace CSV here");
    sub->add_flag("--probes", cfg.probes, "record domain-distance probes in the trace");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one diagnosis");
  add_problem_flags(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "one diagnosis per gamma on a grid");
  add_problem_flags(sweep_cmd);
  sweep_cmd->add_option("--gammas", gammas_text, "comma-separated gamma grid")->required();
  sweep_cmd->add_option("--out", sweep_out, "write the sweep CSV here");

  CLI::App* zoo_cmd = app.add_subcommand("zoo", "catalog utilities");
  zoo_cmd->require_subcommand(1);
  zoo_cmd->add_subcommand("list", "print the catalog");
  CLI::App* verify_cmd = zoo_cmd->add_subcommand("verify", "run the acceptance checks");
  verify_cmd->add_option("--only", only_entry, "restrict to the checks for one entry");
  verify_cmd->add_option("--inject-failure", inject, "test fixture: force a criterion to fail")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (cfg.zoo_id.empty() == cfg.problem_path.empty()) {
        throw InputError("pass exactly one of --zoo or --problem");
      }
      return cmd_run(cfg);
    }
    if (sweep_cmd->parsed()) {
      if (cfg.zoo_id.empty() == cfg.problem_path.empty()) {
        throw InputError("pass exactly one of --zoo or --problem");
      }
      return cmd_sweep(cfg, gammas_text, sweep_out);
    }
    if (zoo_cmd->parsed()) {
      if (zoo_cmd->get_subcommand("list")->parsed()) return cmd_zoo_list();
      if (!only_entry.empty()) verify_opts.only_entry = only_entry;
      if (inject != 0) verify_opts.inject_failure = inject;
      return cmd_zoo_verify(verify_opts);
    }
  } catch (const CapabilityError& ex) {
    std::cerr << "capability error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
