#pragma once

#include <string>
#include <vector>

#include "taskgrowth/analysis.hpp"
#include "taskgrowth/dynamics.hpp"

namespace taskgrowth {

struct SimulationGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double t_step = 0.0;

  void validate() const;
  std::vector<double> times() const;
};

struct ScenarioFile {
  Scenario scenario;
  SimulationGrid grid;
};

// TOML (flat sections) or JSON, chosen by extension (.json) with a TOML
// fallback. ValidationError diagnostics carry the field path, e.g. labor.L0.
ScenarioFile load_scenario(const std::string& path);
ScenarioFile parse_scenario_toml(const std::string& text);
ScenarioFile parse_scenario_json(const std::string& text);

// Sets one numeric scenario field by path ("tasks.alpha_p", "production.beta",
// "compute.Q0", ...). Unknown paths raise ValidationError.
void apply_parameter(ScenarioFile& file, const std::string& path, double value);

// Magnitude-like fields (costs, compute, labor levels) sweep on a log scale.
bool is_log_scale_parameter(const std::string& path);

// CSV with 17-significant-digit scientific notation; byte-deterministic.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& trajectory);
std::string trajectory_json(const std::vector<TrajectoryPoint>& trajectory);

struct SweepRow {
  double value = 0.0;
  AsymptoticVerdict verdict;
  std::optional<double> cognitive_time;
  std::optional<double> physical_time;
};

std::string sweep_csv(const std::string& param, const std::vector<SweepRow>& rows);
std::string sweep_json(const std::string& param, const std::vector<SweepRow>& rows);

// Full-precision scientific notation used in every emitted table.
std::string format_number(double v);

}  // namespace taskgrowth
