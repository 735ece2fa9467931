#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "taskgrowth/analysis.hpp"
#include "taskgrowth/scenario_io.hpp"

namespace {

using namespace taskgrowth;

constexpr int kExitSolver = 1;
constexpr int kExitValidation = 2;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("out", "cannot open output file: " + out_path);
  out << content;
}

struct CommonOptions {
  std::string scenario_path;
  std::string out_path = "-";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_format = true) {
  cmd->add_option("--scenario", opts.scenario_path, "Scenario file (TOML or JSON)")
      ->required();
  cmd->add_option("--out", opts.out_path, "Output path, or - for stdout");
  if (with_format) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

int run_simulate(const CommonOptions& opts, std::optional<double> t_start,
                 std::optional<double> t_end, std::optional<double> t_step) {
  ScenarioFile file = load_scenario(opts.scenario_path);
  if (t_start) file.grid.t_start = *t_start;
  if (t_end) file.grid.t_end = *t_end;
  if (t_step) file.grid.t_step = *t_step;
  file.grid.validate();

  const auto grid = file.grid.times();
  const auto trajectory = simulate(file.scenario, grid);
  write_output(opts.out_path, opts.format == "json" ? trajectory_json(trajectory)
                                                    : trajectory_csv(trajectory));
  return 0;
}

int run_thresholds(const CommonOptions& opts) {
  const ScenarioFile file = load_scenario(opts.scenario_path);
  const Scenario& sc = file.scenario;
  const double beta = sc.production.beta();

  std::ostringstream out;
  const auto report_time = [&](const char* name, const std::optional<double>& t) {
    out << name << ": " << (t ? format_number(*t) : "not-reached") << "\n";
  };
  const auto report_level = [&](const char* name, const std::optional<double>& q) {
    out << name << ": " << (q ? format_number(*q) : "none (infinite cost)") << "\n";
  };
  report_time("cognitive_automation_time", cognitive_automation_time(sc));
  report_time("physical_automation_time", physical_automation_time(sc));
  report_level("cognitive_threshold_compute",
               automation_threshold_compute(sc.tasks.cognitive.cost, sc.labor_supply, beta));
  report_level("physical_threshold_compute",
               automation_threshold_compute(sc.tasks.physical.cost, sc.labor_supply, beta));
  if (sc.compute_path.is_bounded()) {
    const auto& b = std::get<BoundedSaturatingPath>(sc.compute_path.kind);
    // Labor flow for the persistence test defaults to the scenario's supply.
    const bool persists = persistence_check(sc.tasks.physical.cost, sc.labor_supply, b.q_max);
    out << "persistence: " << (persists ? "true" : "false") << "\n";
  }
  write_output(opts.out_path, out.str());
  return 0;
}

int run_decompose(const CommonOptions& opts, const std::string& window_arg,
                  double step) {
  const ScenarioFile file = load_scenario(opts.scenario_path);
  const Scenario& sc = file.scenario;

  double w_lo = file.grid.t_start, w_hi = file.grid.t_end;
  if (!window_arg.empty()) {
    if (std::sscanf(window_arg.c_str(), "%lf,%lf", &w_lo, &w_hi) != 2 || !(w_hi > w_lo)) {
      throw ValidationError("window", "expected a,b with b > a");
    }
  }
  if (!(step > 0.0)) throw ValidationError("step", "must be positive");

  const double g_q = sc.compute_path.is_bounded()
                         ? 0.0
                         : std::get<ExponentialPath>(sc.compute_path.kind).growth;
  const double closed =
      growth_decomposition(sc.production.beta(), g_q, sc.g_labor, sc.g_labor_aug);

  SimulationGrid window{w_lo, w_hi, step};
  const auto trajectory = simulate(sc, window.times());
  const auto rates = numeric_growth_rate(trajectory);
  double sum = 0.0;
  for (const auto& [t, g] : rates) sum += g;
  const double numeric = rates.empty() ? 0.0 : sum / static_cast<double>(rates.size());

  std::ostringstream out;
  out << "closed_form_g_Y: " << format_number(closed) << "\n"
      << "numeric_g_Y: " << format_number(numeric) << "\n"
      << "difference: " << format_number(numeric - closed) << "\n";
  write_output(opts.out_path, out.str());
  return 0;
}

int run_sweep(const CommonOptions& opts, const std::string& param,
              const std::string& range_arg) {
  ScenarioFile base = load_scenario(opts.scenario_path);
  double lo = 0.0, hi = 0.0;
  int count = 0;
  if (std::sscanf(range_arg.c_str(), "%lf,%lf,%d", &lo, &hi, &count) != 3) {
    throw ValidationError("range", "expected lo,hi,count");
  }
  if (!(lo < hi)) throw ValidationError("range", "requires lo < hi");
  if (count < 2) throw ValidationError("range", "requires count >= 2");

  const bool log_scale = is_log_scale_parameter(param) && lo > 0.0;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / (count - 1);
    const double value = log_scale ? lo * std::pow(hi / lo, frac) : lo + (hi - lo) * frac;
    ScenarioFile file = base;
    apply_parameter(file, param, value);
    SweepRow row;
    row.value = value;
    row.verdict = asymptotic_labor_share(file.scenario);
    row.cognitive_time = cognitive_automation_time(file.scenario);
    row.physical_time = physical_automation_time(file.scenario);
    rows.push_back(std::move(row));
  }
  write_output(opts.out_path, opts.format == "json" ? sweep_json(param, rows)
                                                    : sweep_csv(param, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-task automation economy: simulation and analysis"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  std::optional<double> t_start, t_end, t_step;
  auto* sim = app.add_subcommand("simulate", "Simulate the trajectory on the time grid");
  add_common(sim, sim_opts);
  sim->add_option("--t-start", t_start, "Override simulation.t_start");
  sim->add_option("--t-end", t_end, "Override simulation.t_end");
  sim->add_option("--t-step", t_step, "Override simulation.t_step");

  CommonOptions thr_opts;
  auto* thr = app.add_subcommand("thresholds", "Report automation times and thresholds");
  add_common(thr, thr_opts, /*with_format=*/false);

  CommonOptions dec_opts;
  std::string window_arg;
  double dec_step = 0.1;
  auto* dec = app.add_subcommand("decompose", "Growth accounting over a window");
  add_common(dec, dec_opts, /*with_format=*/false);
  dec->add_option("--window", window_arg, "Window a,b (defaults to the grid span)");
  dec->add_option("--step", dec_step, "Sampling step for the numeric rate");

  CommonOptions swp_opts;
  std::string param, range_arg;
  auto* swp = app.add_subcommand("sweep", "Sweep one parameter and report verdicts");
  add_common(swp, swp_opts);
  swp->add_option("--param", param, "Parameter path, e.g. tasks.alpha_p")->required();
  swp->add_option("--range", range_arg, "lo,hi,count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_opts, t_start, t_end, t_step);
    if (thr->parsed()) return run_thresholds(thr_opts);
    if (dec->parsed()) return run_decompose(dec_opts, window_arg, dec_step);
    if (swp->parsed()) return run_sweep(swp_opts, param, range_arg);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitValidation;
}
