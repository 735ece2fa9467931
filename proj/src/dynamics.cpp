#include "taskgrowth/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace taskgrowth {
namespace {

// First t >= 0 with Q_t >= threshold0 * e^{g_threshold t}, or nullopt.
std::optional<double> crossing_time(const ComputePath& path, double threshold0,
                                    double g_threshold) {
  if (compute_at(path, 0.0) >= threshold0) return 0.0;

  if (const auto* exp = std::get_if<ExponentialPath>(&path.kind)) {
    const double g = exp->growth - g_threshold;
    if (g <= 0.0) return std::nullopt;
    return std::log(threshold0 / exp->q0) / g;
  }

  const auto& b = std::get<BoundedSaturatingPath>(path.kind);
  if (g_threshold == 0.0) {
    if (b.q_max < threshold0) return std::nullopt;
    if (b.q_max == threshold0) return std::nullopt;  // approached, never attained
    return -std::log((b.q_max - threshold0) / (b.q_max - b.q0)) / b.rate;
  }
  // Growing or shrinking threshold against a saturating path: scan for the
  // first sign change, then bisect inside it.
  const double t_max = 1e6;
  double prev = 0.0;
  const auto gap = [&](double t) {
    return compute_at(path, t) - threshold0 * std::exp(g_threshold * t);
  };
  for (double t = 1.0; t <= t_max; t *= (t < 64.0 ? 2.0 : 1.25)) {
    if (gap(t) >= 0.0) {
      double lo = prev, hi = t;
      for (int i = 0; i < 200 && (hi - lo) > 1e-12 * std::max(hi, 1.0); ++i) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) >= 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
    prev = t;
  }
  return std::nullopt;
}

}  // namespace

void ComputePath::validate(const std::string& prefix) const {
  if (const auto* e = std::get_if<ExponentialPath>(&kind)) {
    if (!(e->q0 > 0.0) || !std::isfinite(e->q0)) {
      throw ValidationError(prefix + ".Q0", "must be a positive real");
    }
    if (!std::isfinite(e->growth)) {
      throw ValidationError(prefix + ".g", "must be finite");
    }
  } else {
    const auto& b = std::get<BoundedSaturatingPath>(kind);
    if (!(b.q0 > 0.0) || !std::isfinite(b.q0)) {
      throw ValidationError(prefix + ".Q0", "must be a positive real");
    }
    if (!(b.q_max >= b.q0) || !std::isfinite(b.q_max)) {
      throw ValidationError(prefix + ".Qmax", "must satisfy Qmax >= Q0 > 0");
    }
    if (!(b.rate > 0.0) || !std::isfinite(b.rate)) {
      throw ValidationError(prefix + ".rate", "must be a positive real");
    }
  }
}

double compute_at(const ComputePath& path, double t) {
  if (const auto* e = std::get_if<ExponentialPath>(&path.kind)) {
    return e->q0 * std::exp(e->growth * t);
  }
  const auto& b = std::get<BoundedSaturatingPath>(path.kind);
  return b.q0 - (b.q_max - b.q0) * std::expm1(-b.rate * t);
}

void Scenario::validate() const {
  production.validate();
  compute_path.validate();
  if (!(labor_supply > 0.0) || !std::isfinite(labor_supply)) {
    throw ValidationError("labor.L0", "must be a positive real");
  }
  if (!std::isfinite(g_hicks) || !std::isfinite(g_labor_aug) || !std::isfinite(g_labor)) {
    throw ValidationError("growth", "rates must be finite");
  }
}

std::vector<TrajectoryPoint> simulate(const Scenario& scenario,
                                      std::span<const double> t_grid) {
  scenario.validate();
  double prev_t = -std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    if (!(t >= 0.0) || t < prev_t) {
      throw ValidationError("simulation.t_grid", "must be ascending and nonnegative");
    }
    prev_t = t;
  }

  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    ResourceState res;
    res.compute = compute_at(scenario.compute_path, t);
    res.labor = scenario.labor_supply * std::exp(scenario.g_labor * t);
    ProductionSpec spec = scenario.production;
    spec.hicks_neutral *= std::exp(scenario.g_hicks * t);
    spec.labor_augmenting *= std::exp(scenario.g_labor_aug * t);
    try {
      TrajectoryPoint point;
      point.t = t;
      point.q = res.compute;
      point.result = allocate(res, scenario.tasks, spec);
      point.flags = automation_flags(point.result, scenario.tasks, res, spec);
      out.push_back(point);
    } catch (const SolverError& e) {
      throw SolverError("t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return out;
}

std::optional<double> automation_threshold_compute(const AutomationCost& cost,
                                                  double labor, double beta) {
  if (!cost.is_finite()) return std::nullopt;
  return (1.0 - beta) / beta * cost.value() * labor;
}

std::optional<double> cognitive_automation_time(const Scenario& scenario) {
  scenario.validate();
  const auto threshold = automation_threshold_compute(
      scenario.tasks.cognitive.cost, scenario.labor_supply, scenario.production.beta());
  if (!threshold) return std::nullopt;
  return crossing_time(scenario.compute_path, *threshold, scenario.g_labor);
}

std::optional<double> physical_automation_time(const Scenario& scenario) {
  scenario.validate();
  const auto threshold = automation_threshold_compute(
      scenario.tasks.physical.cost, scenario.labor_supply, scenario.production.beta());
  if (!threshold) return std::nullopt;
  return crossing_time(scenario.compute_path, *threshold, scenario.g_labor);
}

bool persistence_check(const AutomationCost& alpha_p, double labor_flow,
                       double q_max) {
  if (!(labor_flow > 0.0) || !(q_max > 0.0)) {
    throw ValidationError("persistence", "labor_flow and q_max must be positive");
  }
  if (!alpha_p.is_finite()) return true;
  return alpha_p.value() * labor_flow > q_max;
}

double growth_decomposition(double beta, double g_q, double g_l, double g_al) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ValidationError("beta", "must satisfy 0 < beta < 1");
  }
  return (1.0 - beta) * g_q + beta * g_l + beta * g_al;
}

std::vector<std::pair<double, double>> numeric_growth_rate(
    std::span<const TrajectoryPoint> trajectory) {
  if (trajectory.size() < 3) {
    throw ValidationError("trajectory", "need at least 3 points for centered differences");
  }
  for (const auto& p : trajectory) {
    if (!(p.result.output > 0.0)) {
      throw NonPositiveOutput("growth rate undefined for nonpositive output");
    }
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(trajectory.size() - 2);
  for (size_t i = 1; i + 1 < trajectory.size(); ++i) {
    const double dt = trajectory[i + 1].t - trajectory[i - 1].t;
    const double g = (std::log(trajectory[i + 1].result.output) -
                      std::log(trajectory[i - 1].result.output)) /
                     dt;
    out.emplace_back(trajectory[i].t, g);
  }
  return out;
}

}  // namespace taskgrowth
