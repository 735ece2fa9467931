#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "taskgrowth/allocator.hpp"
#include "taskgrowth/model.hpp"

namespace taskgrowth {

struct ExponentialPath {
  double q0;      // FLOP/yr at t = 0
  double growth;  // continuous rate, 1/yr
};

// Q_t = q_max - (q_max - q0) e^{-rate t}, monotone, Q_t -> q_max.
struct BoundedSaturatingPath {
  double q0;
  double q_max;
  double rate;
};

struct ComputePath {
  std::variant<ExponentialPath, BoundedSaturatingPath> kind;

  void validate(const std::string& prefix = "compute") const;
  bool is_bounded() const { return std::holds_alternative<BoundedSaturatingPath>(kind); }
};

double compute_at(const ComputePath& path, double t);

struct Scenario {
  TaskPair tasks;
  ProductionSpec production;
  double labor_supply = 0.0;  // L_0, human-hours/yr
  ComputePath compute_path;
  double g_hicks = 0.0;      // growth rate of A
  double g_labor_aug = 0.0;  // growth rate of A^L
  double g_labor = 0.0;      // growth rate of L

  void validate() const;
};

struct TrajectoryPoint {
  double t = 0.0;
  double q = 0.0;
  AllocationResult result;
  AutomationFlags flags;
};

// Static optimization at each grid time; points are mutually independent.
std::vector<TrajectoryPoint> simulate(const Scenario& scenario,
                                      std::span<const double> t_grid);

// First time Q_t reaches ((1-beta)/beta) alpha L_t, or nullopt if never.
std::optional<double> cognitive_automation_time(const Scenario& scenario);
std::optional<double> physical_automation_time(const Scenario& scenario);

// Compute level at which a class's labor exits: ((1-beta)/beta) alpha L.
std::optional<double> automation_threshold_compute(const AutomationCost& cost,
                                                   double labor, double beta);

// Proposition-style persistence: the physical bottleneck keeps positive human
// labor in the finite-compute limit iff the cost is infinite or
// alpha_p * labor_flow > q_max.
bool persistence_check(const AutomationCost& alpha_p, double labor_flow,
                       double q_max);

// g_Y = (1 - beta) g_Q + beta g_L + beta g_AL.
double growth_decomposition(double beta, double g_q, double g_l, double g_al);

// Centered log-differences of output on a uniform grid; endpoints excluded.
std::vector<std::pair<double, double>> numeric_growth_rate(
    std::span<const TrajectoryPoint> trajectory);

}  // namespace taskgrowth
