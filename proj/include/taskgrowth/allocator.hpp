#pragma once

#include "taskgrowth/model.hpp"

namespace taskgrowth {

struct AllocationResult {
  Allocation allocation;
  double output = 0.0;         // Y, per year
  double wage = 0.0;           // output per human-hour
  double rent = 0.0;           // output per FLOP
  double labor_share = 0.0;    // w L / Y
  double compute_share = 0.0;  // r Q_employed / Y
};

struct Prices {
  double wage;
  double rent;
};

struct AutomationFlags {
  // A class counts as automated when its labor allocation is below
  // 1e-9 of total labor supply.
  bool cognitive_allocation = false;
  bool physical_allocation = false;
  // Closed-form threshold Q >= ((1-beta)/beta) * alpha * L. Agrees with the
  // allocation-based flags under Cobb-Douglas.
  bool cognitive_threshold = false;
  bool physical_threshold = false;
};

// Output-maximizing static split of labor and compute across the two
// aggregates, with the competitive prices and factor shares it implies.
// Nested bisection on the marginal-value equalization conditions, with
// closed-form corner thresholds and a final polish of interior splits.
AllocationResult allocate(const ResourceState& resources, const TaskPair& tasks,
                          const ProductionSpec& spec);

// Exhaustive grid oracle: grid_points x grid_points over the two resource
// shares, refined once around the best cell. Test oracle only.
AllocationResult brute_force_allocate(const ResourceState& resources,
                                      const TaskPair& tasks,
                                      const ProductionSpec& spec,
                                      int grid_points);

// Competitive prices implied by an allocation: wage is the marginal value of
// labor where it is employed, rent the best marginal value per FLOP across
// classes with finite cost (a shadow price when no compute is in use).
Prices prices(const Allocation& allocation, const TaskPair& tasks,
              const ProductionSpec& spec);

// Max relative KKT residual of an allocation: marginal values equalized
// across employed uses, weakly lower at unemployed ones, resources exhausted.
double kkt_residual(const Allocation& allocation, const ResourceState& resources,
                    const TaskPair& tasks, const ProductionSpec& spec);

AutomationFlags automation_flags(const AllocationResult& result,
                                 const TaskPair& tasks,
                                 const ResourceState& resources,
                                 const ProductionSpec& spec);

}  // namespace taskgrowth
