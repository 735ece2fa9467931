#include "taskgrowth/analysis.hpp"

#include <cmath>

namespace taskgrowth {
namespace {

AsymptoticVerdict finite_regime_verdict(const Scenario& scenario, double q_limit) {
  AsymptoticVerdict v;
  v.regime = Regime::FiniteCompute;
  ResourceState res{q_limit, scenario.labor_supply};
  const auto result = allocate(res, scenario.tasks, scenario.production);
  v.limiting_labor_share = result.labor_share;
  v.reason = "allocation-at-compute-limit";
  return v;
}

}  // namespace

AsymptoticVerdict asymptotic_labor_share(const Scenario& scenario) {
  scenario.validate();

  if (const auto* e = std::get_if<ExponentialPath>(&scenario.compute_path.kind)) {
    if (e->growth <= 0.0) {
      // Compute stalls (or decays to zero): effectively a finite limit.
      return finite_regime_verdict(scenario, e->growth == 0.0 ? e->q0 : 0.0);
    }
    AsymptoticVerdict v;
    v.regime = Regime::UnboundedCompute;
    const bool c_finite = scenario.tasks.cognitive.cost.is_finite();
    const bool p_finite = scenario.tasks.physical.cost.is_finite();
    const double beta = scenario.production.beta();

    if (scenario.production.is_cobb_douglas()) {
      if (c_finite && p_finite) {
        v.limiting_labor_share = 0.0;
        v.reason = "both-classes-automate";
      } else if (c_finite) {
        v.limiting_labor_share = beta;
        v.reason = "physical-labor-bottleneck";
      } else if (p_finite) {
        v.limiting_labor_share = 1.0 - beta;
        v.reason = "cognitive-labor-bottleneck";
      } else {
        v.limiting_labor_share = 1.0;
        v.reason = "no-automation";
      }
      return v;
    }
    // CES: the quantity ratio stabilizes only when both classes automate, in
    // which case labor income vanishes. Otherwise the ratio diverges and the
    // limit is not determined by the share formula.
    if (c_finite && p_finite) {
      v.limiting_labor_share = 0.0;
      v.reason = "both-classes-automate";
    } else {
      v.limiting_labor_share = std::nullopt;
      v.reason = "ces-ratio-diverges";
    }
    return v;
  }

  const auto& b = std::get<BoundedSaturatingPath>(scenario.compute_path.kind);
  return finite_regime_verdict(scenario, b.q_max);
}

double ces_share(double x_c, double x_p, double beta, double rho) {
  if (!(x_c > 0.0) || !(x_p > 0.0)) {
    throw ValidationError("ces_share", "inputs must be positive");
  }
  if (!(rho < 1.0) || rho == 0.0) {
    throw ValidationError("ces_share", "requires rho < 1 and rho != 0");
  }
  const double m = std::max(x_c, x_p);
  const double sc = (1.0 - beta) * std::pow(x_c / m, rho);
  const double sp = beta * std::pow(x_p / m, rho);
  return sp / (sc + sp);
}

bool classify_bottleneck(const ProductionSpec& spec, TaskClass) {
  // Symmetric across the two aggregates for both families.
  if (spec.is_cobb_douglas()) return true;
  return std::get<Ces>(spec.family).rho < 0.0;
}

}  // namespace taskgrowth
