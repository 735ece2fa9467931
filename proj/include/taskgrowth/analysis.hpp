#pragma once

#include <optional>
#include <string>

#include "taskgrowth/dynamics.hpp"

namespace taskgrowth {

enum class Regime { FiniteCompute, UnboundedCompute };

struct AsymptoticVerdict {
  Regime regime = Regime::FiniteCompute;
  // Empty when the limit cannot be pinned down (CES with a divergent ratio).
  std::optional<double> limiting_labor_share;
  std::string reason;
};

// Long-run labor share implied by the scenario's compute path and costs.
AsymptoticVerdict asymptotic_labor_share(const Scenario& scenario);

// Physical aggregate's CES income share: beta x_p^rho / ((1-beta) x_c^rho + beta x_p^rho).
double ces_share(double x_c, double x_p, double beta, double rho);

// Whether the queried aggregate is a bottleneck: unbounded output forces its
// quantity or its marginal product to diverge.
bool classify_bottleneck(const ProductionSpec& spec, TaskClass klass);

}  // namespace taskgrowth
