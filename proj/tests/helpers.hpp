#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "taskgrowth/dynamics.hpp"

namespace tg_test {

using namespace taskgrowth;

inline TaskPair two_tasks(AutomationCost alpha_c, AutomationCost alpha_p) {
  return {{"cognitive", TaskClass::Cognitive, alpha_c},
          {"physical", TaskClass::Physical, alpha_p}};
}

// The bundled baseline economy: alpha_c = 1e14, alpha_p = 1e21, L = 1e9,
// Q_t = 1e22 e^{0.2 t}, Cobb-Douglas beta = 0.5, A = A^L = 1.
inline Scenario baseline_scenario() {
  Scenario sc;
  sc.tasks = two_tasks(AutomationCost::finite(1e14), AutomationCost::finite(1e21));
  sc.production.family = CobbDouglas{0.5};
  sc.labor_supply = 1e9;
  sc.compute_path.kind = ExponentialPath{1e22, 0.2};
  return sc;
}

inline Scenario infinite_physical_scenario(double beta = 0.5) {
  Scenario sc = baseline_scenario();
  sc.production.family = CobbDouglas{beta};
  sc.tasks.physical.cost = AutomationCost::infinite();
  return sc;
}

struct RandomInstance {
  ResourceState resources;
  TaskPair tasks;
  ProductionSpec spec;
};

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline std::vector<RandomInstance> random_instances(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> beta_dist(0.1, 0.9);
  std::vector<RandomInstance> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    RandomInstance in;
    in.resources.compute = log_uniform(rng, 1e18, 1e32);
    in.resources.labor = log_uniform(rng, 1e6, 1e10);
    in.tasks = two_tasks(AutomationCost::finite(log_uniform(rng, 1e12, 1e16)),
                         AutomationCost::finite(log_uniform(rng, 1e18, 1e24)));
    in.spec.family = CobbDouglas{beta_dist(rng)};
    out.push_back(in);
  }
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace tg_test
