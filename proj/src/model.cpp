#include "taskgrowth/model.hpp"

#include <cmath>

namespace taskgrowth {

AutomationCost AutomationCost::finite(double flop_per_year_per_hour) {
  if (!(flop_per_year_per_hour > 0.0) || !std::isfinite(flop_per_year_per_hour)) {
    throw ValidationError("automation_cost", "finite cost must be a positive real");
  }
  return AutomationCost(flop_per_year_per_hour, true);
}

double AutomationCost::value() const {
  if (!finite_) {
    throw InfiniteCostWithCompute("value() called on an infinite automation cost");
  }
  return value_;
}

double ProductionSpec::beta() const {
  return std::visit([](const auto& f) { return f.beta; }, family);
}

void ProductionSpec::validate(const std::string& prefix) const {
  const double b = beta();
  if (!(b > 0.0 && b < 1.0)) {
    throw ValidationError(prefix + ".beta", "must satisfy 0 < beta < 1");
  }
  if (const auto* ces = std::get_if<Ces>(&family)) {
    if (!(ces->rho < 1.0) || ces->rho == 0.0 || !std::isfinite(ces->rho)) {
      throw ValidationError(prefix + ".rho",
                            "CES requires rho < 1 and rho != 0 (use cobb-douglas for rho = 0)");
    }
  }
  if (!(hicks_neutral > 0.0) || !std::isfinite(hicks_neutral)) {
    throw ValidationError(prefix + ".A0", "must be a positive real");
  }
  if (!(labor_augmenting > 0.0) || !std::isfinite(labor_augmenting)) {
    throw ValidationError(prefix + ".AL0", "must be a positive real");
  }
}

double task_output(double labor, double compute, const AutomationCost& cost,
                   double labor_augmenting) {
  if (!cost.is_finite()) {
    if (compute > 0.0) {
      throw InfiniteCostWithCompute(
          "compute allocated to a task with infinite automation cost");
    }
    return labor_augmenting * labor;
  }
  return labor_augmenting * labor + compute / cost.value();
}

double aggregate_output(double x_cognitive, double x_physical,
                        const ProductionSpec& spec) {
  const double a = spec.hicks_neutral;
  if (const auto* cd = std::get_if<CobbDouglas>(&spec.family)) {
    if (x_cognitive == 0.0 || x_physical == 0.0) return 0.0;
    return a * std::pow(x_cognitive, 1.0 - cd->beta) * std::pow(x_physical, cd->beta);
  }
  const auto& ces = std::get<Ces>(spec.family);
  if (x_cognitive == 0.0 && x_physical == 0.0) return 0.0;
  if (ces.rho < 0.0 && (x_cognitive == 0.0 || x_physical == 0.0)) return 0.0;
  // Factor out the larger input so the rho-powers stay in (0, 1].
  const double m = std::max(x_cognitive, x_physical);
  const double sc = (1.0 - ces.beta) * std::pow(x_cognitive / m, ces.rho);
  const double sp = ces.beta * std::pow(x_physical / m, ces.rho);
  return a * m * std::pow(sc + sp, 1.0 / ces.rho);
}

MarginalProducts marginal_products(double x_cognitive, double x_physical,
                                   const ProductionSpec& spec) {
  if (const auto* cd = std::get_if<CobbDouglas>(&spec.family)) {
    if (x_cognitive <= 0.0 || x_physical <= 0.0) {
      throw UndefinedMarginal("Cobb-Douglas marginal product diverges at a zero input");
    }
    const double y = aggregate_output(x_cognitive, x_physical, spec);
    return {(1.0 - cd->beta) * y / x_cognitive, cd->beta * y / x_physical};
  }
  const auto& ces = std::get<Ces>(spec.family);
  const double a = spec.hicks_neutral;
  if (x_cognitive == 0.0 || x_physical == 0.0) {
    if (ces.rho > 0.0) {
      // The zero input's own marginal diverges; the other is the linear slope.
      throw UndefinedMarginal("CES with 0 < rho < 1 has a divergent marginal at zero");
    }
    // rho < 0: at x_c = 0 output behaves like A (1-beta)^(1/rho) x_c.
    if (x_cognitive == 0.0 && x_physical == 0.0) {
      return {a * std::pow(1.0 - ces.beta, 1.0 / ces.rho),
              a * std::pow(ces.beta, 1.0 / ces.rho)};
    }
    if (x_cognitive == 0.0) {
      return {a * std::pow(1.0 - ces.beta, 1.0 / ces.rho), 0.0};
    }
    return {0.0, a * std::pow(ces.beta, 1.0 / ces.rho)};
  }
  const double y = aggregate_output(x_cognitive, x_physical, spec);
  const double m = std::max(x_cognitive, x_physical);
  const double sc = (1.0 - ces.beta) * std::pow(x_cognitive / m, ces.rho);
  const double sp = ces.beta * std::pow(x_physical / m, ces.rho);
  const double s = sc + sp;
  // MP_i = share_i * Y / x_i keeps Euler exhaustion exact to rounding.
  return {(sc / s) * y / x_cognitive, (sp / s) * y / x_physical};
}

}  // namespace taskgrowth
