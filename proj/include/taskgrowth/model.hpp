#pragma once

#include <string>
#include <variant>

#include "taskgrowth/errors.hpp"

namespace taskgrowth {

// Compute cost of replicating one human-hour-per-year of work on a task,
// in FLOP per year. Infinite is a distinct variant, never a sentinel float.
class AutomationCost {
public:
  AutomationCost() : AutomationCost(0.0, false) {}  // defaults to Infinite

  static AutomationCost finite(double flop_per_year_per_hour);
  static AutomationCost infinite() { return AutomationCost(0.0, false); }

  bool is_finite() const noexcept { return finite_; }

  // FLOP/yr per human-hour/yr. Only valid for finite costs.
  double value() const;

private:
  AutomationCost(double v, bool finite) : value_(v), finite_(finite) {}
  double value_;
  bool finite_;
};

enum class TaskClass { Cognitive, Physical };

struct TaskSpec {
  std::string id;
  TaskClass klass;
  AutomationCost cost;
};

// One representative task per class.
struct TaskPair {
  TaskSpec cognitive;
  TaskSpec physical;
};

struct CobbDouglas {
  double beta;  // physical exponent, 0 < beta < 1
};

struct Ces {
  double beta;  // physical weight, 0 < beta < 1
  double rho;   // substitution parameter, rho < 1, rho != 0
};

struct ProductionSpec {
  std::variant<CobbDouglas, Ces> family = CobbDouglas{0.5};
  double hicks_neutral = 1.0;     // A, multiplies total output
  double labor_augmenting = 1.0;  // A^L, multiplies effective labor

  double beta() const;
  bool is_cobb_douglas() const { return std::holds_alternative<CobbDouglas>(family); }

  // Throws ValidationError naming the offending field.
  void validate(const std::string& prefix = "production") const;
};

struct ResourceState {
  double compute = 0.0;  // FLOP per year
  double labor = 0.0;    // human-hours per year
};

// Four-way split of the two resources across the two aggregates.
struct Allocation {
  double labor_cognitive = 0.0;
  double labor_physical = 0.0;
  double compute_cognitive = 0.0;
  double compute_physical = 0.0;
};

// Effective task quantity: labor_augmenting * labor + compute / cost.
// Throws InfiniteCostWithCompute when compute > 0 but the cost is infinite.
double task_output(double labor, double compute, const AutomationCost& cost,
                   double labor_augmenting);

// Y = A * x_c^(1-beta) * x_p^beta, or the CES aggregate. Degree-1 homogeneous.
double aggregate_output(double x_cognitive, double x_physical,
                        const ProductionSpec& spec);

struct MarginalProducts {
  double cognitive;
  double physical;
};

// Analytic partials of aggregate_output. Throws UndefinedMarginal where the
// derivative diverges (Cobb-Douglas zero input; CES with 0 < rho < 1 at zero).
MarginalProducts marginal_products(double x_cognitive, double x_physical,
                                   const ProductionSpec& spec);

}  // namespace taskgrowth
