#include "taskgrowth/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace taskgrowth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAutomationEps = 1e-9;  // relative labor below which a class counts as automated

// Marginal products that report divergence as +inf instead of throwing.
// Solver-internal; infinities never leave this translation unit.
MarginalProducts mp_unchecked(double xc, double xp, const ProductionSpec& spec) {
  const double a = spec.hicks_neutral;
  if (spec.is_cobb_douglas()) {
    if (xc == 0.0 && xp == 0.0) return {kInf, kInf};
    if (xc == 0.0) return {kInf, 0.0};
    if (xp == 0.0) return {0.0, kInf};
    return marginal_products(xc, xp, spec);
  }
  const auto& ces = std::get<Ces>(spec.family);
  if (xc == 0.0 || xp == 0.0) {
    if (ces.rho < 0.0) return marginal_products(xc, xp, spec);
    const double slope_c = a * std::pow(1.0 - ces.beta, 1.0 / ces.rho);
    const double slope_p = a * std::pow(ces.beta, 1.0 / ces.rho);
    if (xc == 0.0 && xp == 0.0) return {slope_c, slope_p};
    if (xc == 0.0) return {kInf, slope_p};
    return {slope_c, kInf};
  }
  return marginal_products(xc, xp, spec);
}

int cmp(double a, double b) {
  if (a == b) return 0;  // covers inf == inf
  return a > b ? 1 : -1;
}

// Interior optimum ratio x_p / x_c for labor equalization: MP_p = MP_c.
double labor_ratio(const ProductionSpec& spec) {
  const double b = spec.beta();
  const double rho = spec.is_cobb_douglas() ? 0.0 : std::get<Ces>(spec.family).rho;
  return std::pow(b / (1.0 - b), 1.0 / (1.0 - rho));
}

// Interior ratio for rent equalization: MP_p / alpha_p = MP_c / alpha_c.
double compute_ratio(const ProductionSpec& spec, double alpha_c, double alpha_p) {
  const double b = spec.beta();
  const double rho = spec.is_cobb_douglas() ? 0.0 : std::get<Ces>(spec.family).rho;
  return std::pow(b * alpha_c / ((1.0 - b) * alpha_p), 1.0 / (1.0 - rho));
}

struct Instance {
  double labor;
  double compute;
  double inv_alpha_c;  // 0 when the cost is infinite
  double inv_alpha_p;
  bool c_finite;
  bool p_finite;
};

void check_instance(const ResourceState& res, const TaskPair& tasks,
                    const ProductionSpec& spec) {
  spec.validate();
  if (!(res.labor >= 0.0) || !std::isfinite(res.labor)) {
    throw ValidationError("resources.labor", "must be nonnegative and finite");
  }
  if (!(res.compute >= 0.0) || !std::isfinite(res.compute)) {
    throw ValidationError("resources.compute", "must be nonnegative and finite");
  }
  if (tasks.cognitive.klass != TaskClass::Cognitive ||
      tasks.physical.klass != TaskClass::Physical) {
    throw ValidationError("tasks", "expected one cognitive and one physical task");
  }
  if (tasks.cognitive.id == tasks.physical.id) {
    throw ValidationError("tasks.id", "task ids must be unique");
  }
  if (res.labor == 0.0 && res.compute == 0.0) {
    throw DegenerateEconomy("no labor and no compute to allocate");
  }
  if (!tasks.physical.cost.is_finite() && res.labor == 0.0) {
    throw InfeasibleSpec(
        "physical task has infinite cost and no labor exists; output is identically 0");
  }
  if (!tasks.cognitive.cost.is_finite() && res.labor == 0.0) {
    throw InfeasibleSpec(
        "cognitive task has infinite cost and no labor exists; output is identically 0");
  }
}

Instance make_instance(const ResourceState& res, const TaskPair& tasks) {
  Instance in;
  in.labor = res.labor;
  in.compute = res.compute;
  in.c_finite = tasks.cognitive.cost.is_finite();
  in.p_finite = tasks.physical.cost.is_finite();
  in.inv_alpha_c = in.c_finite ? 1.0 / tasks.cognitive.cost.value() : 0.0;
  in.inv_alpha_p = in.p_finite ? 1.0 / tasks.physical.cost.value() : 0.0;
  return in;
}

// Sign of d(output)/d(labor_physical) at a fixed compute split.
int labor_gradient_sign(const Instance& in, const ProductionSpec& spec,
                        double l_p, double q_c, double q_p) {
  const double al = spec.labor_augmenting;
  const double xc = al * (in.labor - l_p) + q_c * in.inv_alpha_c;
  const double xp = al * l_p + q_p * in.inv_alpha_p;
  const auto mp = mp_unchecked(xc, xp, spec);
  return cmp(mp.physical, mp.cognitive);
}

// Optimal labor_physical for a fixed compute split. Corner checks first
// (automation is declared at the exact threshold), then bisection on the
// gradient sign, then a closed-form polish of the equalization condition.
double solve_labor_split(const Instance& in, const ProductionSpec& spec,
                         double q_c, double q_p) {
  const double L = in.labor;
  if (L == 0.0) return 0.0;
  if (labor_gradient_sign(in, spec, L, q_c, q_p) >= 0) return L;
  if (labor_gradient_sign(in, spec, 0.0, q_c, q_p) <= 0) return 0.0;

  double lo = 0.0, hi = L;
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * L; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (labor_gradient_sign(in, spec, mid, q_c, q_p) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Interior: x_p = r x_c is linear in l_p.
  const double al = spec.labor_augmenting;
  const double r = labor_ratio(spec);
  const double polished =
      (r * (al * L + q_c * in.inv_alpha_c) - q_p * in.inv_alpha_p) / (al * (1.0 + r));
  if (polished >= 0.0 && polished <= L) return polished;
  return 0.5 * (lo + hi);
}

// Sign of d(output)/d(compute_physical) with labor re-optimized (envelope).
int compute_gradient_sign(const Instance& in, const ProductionSpec& spec,
                          double q_p) {
  const double q_c = in.compute - q_p;
  const double l_p = solve_labor_split(in, spec, q_c, q_p);
  const double al = spec.labor_augmenting;
  const double xc = al * (in.labor - l_p) + q_c * in.inv_alpha_c;
  const double xp = al * l_p + q_p * in.inv_alpha_p;
  const auto mp = mp_unchecked(xc, xp, spec);
  return cmp(mp.physical * in.inv_alpha_p, mp.cognitive * in.inv_alpha_c);
}

// Compute split when both costs are finite and Q > 0.
double solve_compute_split(const Instance& in, const ProductionSpec& spec,
                           const TaskPair& tasks) {
  const double Q = in.compute;
  if (compute_gradient_sign(in, spec, 0.0) <= 0) return 0.0;
  if (compute_gradient_sign(in, spec, Q) >= 0) return Q;

  double lo = 0.0, hi = Q;
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * Q; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (compute_gradient_sign(in, spec, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double q_p = 0.5 * (lo + hi);

  // Polish when labor sits at a corner: x_p = s x_c is linear in q_p.
  const double l_p = solve_labor_split(in, spec, in.compute - q_p, q_p);
  if (l_p == 0.0 || l_p == in.labor) {
    const double al = spec.labor_augmenting;
    const double l_c = in.labor - l_p;
    const double s = compute_ratio(spec, tasks.cognitive.cost.value(),
                                   tasks.physical.cost.value());
    const double denom = in.inv_alpha_p + s * in.inv_alpha_c;
    const double polished =
        (s * (al * l_c + Q * in.inv_alpha_c) - al * l_p) / denom;
    if (polished >= 0.0 && polished <= Q &&
        solve_labor_split(in, spec, Q - polished, polished) == l_p) {
      q_p = polished;
    }
  }
  return q_p;
}

AllocationResult make_result(const Allocation& alloc, const TaskPair& tasks,
                             const ProductionSpec& spec) {
  const double al = spec.labor_augmenting;
  const double xc = task_output(alloc.labor_cognitive, alloc.compute_cognitive,
                                tasks.cognitive.cost, al);
  const double xp = task_output(alloc.labor_physical, alloc.compute_physical,
                                tasks.physical.cost, al);
  const double y = aggregate_output(xc, xp, spec);
  if (!(y > 0.0)) {
    throw InfeasibleSpec("optimal output is zero; the economy cannot produce");
  }
  AllocationResult result;
  result.allocation = alloc;
  result.output = y;

  const Prices p = prices(alloc, tasks, spec);
  result.wage = p.wage;
  result.rent = p.rent;

  const double labor_total = alloc.labor_cognitive + alloc.labor_physical;
  const double compute_total = alloc.compute_cognitive + alloc.compute_physical;
  // With no compute employed all income accrues to labor; the share is
  // identically 1 rather than w L / Y, which carries rounding noise.
  if (compute_total == 0.0) {
    result.compute_share = 0.0;
    result.labor_share = labor_total > 0.0 ? 1.0 : 0.0;
  } else {
    result.compute_share = p.rent * compute_total / y;
    result.labor_share = labor_total > 0.0 ? p.wage * labor_total / y : 0.0;
  }
  return result;
}

}  // namespace

AllocationResult allocate(const ResourceState& resources, const TaskPair& tasks,
                          const ProductionSpec& spec) {
  check_instance(resources, tasks, spec);
  const Instance in = make_instance(resources, tasks);

  double q_p = 0.0;
  if (in.compute > 0.0) {
    if (in.c_finite && in.p_finite) {
      q_p = solve_compute_split(in, spec, tasks);
    } else if (!in.c_finite && in.p_finite) {
      q_p = in.compute;
    }
    // Only the physical cost infinite: all compute stays cognitive (q_p = 0);
    // both infinite: compute is unusable.
  }
  const double q_c = (in.c_finite && in.compute > 0.0) ? in.compute - q_p : 0.0;
  const double l_p = solve_labor_split(in, spec, q_c, q_p);

  Allocation alloc;
  alloc.labor_physical = l_p;
  alloc.labor_cognitive = in.labor - l_p;
  alloc.compute_physical = q_p;
  alloc.compute_cognitive = q_c;
  return make_result(alloc, tasks, spec);
}

Prices prices(const Allocation& alloc, const TaskPair& tasks,
              const ProductionSpec& spec) {
  const double al = spec.labor_augmenting;
  const double xc = task_output(alloc.labor_cognitive, alloc.compute_cognitive,
                                tasks.cognitive.cost, al);
  const double xp = task_output(alloc.labor_physical, alloc.compute_physical,
                                tasks.physical.cost, al);
  const auto mp = mp_unchecked(xc, xp, spec);
  if (std::isinf(mp.cognitive) || std::isinf(mp.physical)) {
    throw UndefinedMarginal("marginal product diverges at this allocation");
  }

  Prices p{0.0, 0.0};
  const bool has_lc = alloc.labor_cognitive > 0.0;
  const bool has_lp = alloc.labor_physical > 0.0;
  if (has_lc || has_lp) {
    double w = 0.0;
    if (has_lc) w = std::max(w, mp.cognitive);
    if (has_lp) w = std::max(w, mp.physical);
    p.wage = al * w;
  } else {
    p.wage = al * std::max(mp.cognitive, mp.physical);  // shadow wage
  }
  if (tasks.cognitive.cost.is_finite()) {
    p.rent = std::max(p.rent, mp.cognitive / tasks.cognitive.cost.value());
  }
  if (tasks.physical.cost.is_finite()) {
    p.rent = std::max(p.rent, mp.physical / tasks.physical.cost.value());
  }
  return p;
}

AllocationResult brute_force_allocate(const ResourceState& resources,
                                      const TaskPair& tasks,
                                      const ProductionSpec& spec,
                                      int grid_points) {
  if (grid_points < 11) {
    throw ValidationError("grid_points", "oracle grid must have at least 11 points");
  }
  check_instance(resources, tasks, spec);
  const Instance in = make_instance(resources, tasks);
  const double al = spec.labor_augmenting;

  const bool split_labor = in.labor > 0.0;
  const bool split_compute = in.compute > 0.0 && in.c_finite && in.p_finite;
  // Fixed compute routing when only one class can absorb it.
  double v_fixed = 0.0;
  if (in.compute > 0.0 && !in.c_finite && in.p_finite) v_fixed = 1.0;

  const auto eval = [&](double u, double v) {
    const double l_p = u * in.labor;
    const double q_p = v * in.compute;
    const double q_c = (in.c_finite && in.compute > 0.0) ? in.compute - q_p : 0.0;
    const double xc = al * (in.labor - l_p) + q_c * in.inv_alpha_c;
    const double xp = al * l_p + q_p * in.inv_alpha_p;
    return aggregate_output(xc, xp, spec);
  };

  double best_y = -1.0, best_u = 0.0, best_v = v_fixed;
  const auto search = [&](double ulo, double uhi, double vlo, double vhi) {
    const int nu = split_labor ? grid_points : 1;
    const int nv = split_compute ? grid_points : 1;
    for (int i = 0; i < nu; ++i) {
      const double u = split_labor ? ulo + (uhi - ulo) * i / (nu - 1) : 0.0;
      for (int j = 0; j < nv; ++j) {
        const double v = split_compute ? vlo + (vhi - vlo) * j / (nv - 1) : v_fixed;
        const double y = eval(u, v);
        if (y > best_y) {
          best_y = y;
          best_u = u;
          best_v = v;
        }
      }
    }
  };

  search(0.0, 1.0, 0.0, 1.0);
  const double du = 1.0 / (grid_points - 1);
  search(std::max(0.0, best_u - du), std::min(1.0, best_u + du),
         std::max(0.0, best_v - du), std::min(1.0, best_v + du));

  Allocation alloc;
  alloc.labor_physical = best_u * in.labor;
  alloc.labor_cognitive = in.labor - alloc.labor_physical;
  alloc.compute_physical = best_v * in.compute;
  alloc.compute_cognitive =
      (in.c_finite && in.compute > 0.0) ? in.compute - alloc.compute_physical : 0.0;
  return make_result(alloc, tasks, spec);
}

double kkt_residual(const Allocation& alloc, const ResourceState& resources,
                    const TaskPair& tasks, const ProductionSpec& spec) {
  const Instance in = make_instance(resources, tasks);
  const double al = spec.labor_augmenting;
  const double xc = al * alloc.labor_cognitive + alloc.compute_cognitive * in.inv_alpha_c;
  const double xp = al * alloc.labor_physical + alloc.compute_physical * in.inv_alpha_p;
  const auto mp = mp_unchecked(xc, xp, spec);

  double residual = 0.0;
  const auto pair_residual = [&](double mv_a, double use_a, double mv_b,
                                 double use_b, double supply) {
    const double scale = std::max(mv_a, mv_b);
    if (!(scale > 0.0) || std::isinf(scale)) {
      // A divergent marginal value at an unserved use is a corner violation.
      if (std::isinf(mv_a) && use_a <= kAutomationEps * supply) residual = kInf;
      if (std::isinf(mv_b) && use_b <= kAutomationEps * supply) residual = kInf;
      return;
    }
    const bool corner_a = use_a <= kAutomationEps * supply;
    const bool corner_b = use_b <= kAutomationEps * supply;
    double r = 0.0;
    if (!corner_a && !corner_b) {
      r = std::abs(mv_a - mv_b) / scale;
    } else if (corner_a) {
      r = std::max(0.0, mv_a - mv_b) / scale;
    } else if (corner_b) {
      r = std::max(0.0, mv_b - mv_a) / scale;
    }
    residual = std::max(residual, r);
  };

  if (in.labor > 0.0) {
    pair_residual(al * mp.cognitive, alloc.labor_cognitive, al * mp.physical,
                  alloc.labor_physical, in.labor);
    residual = std::max(residual,
                        std::abs(in.labor - alloc.labor_cognitive - alloc.labor_physical) /
                            in.labor);
  }
  if (in.compute > 0.0 && (in.c_finite || in.p_finite)) {
    if (in.c_finite && in.p_finite) {
      pair_residual(mp.cognitive * in.inv_alpha_c, alloc.compute_cognitive,
                    mp.physical * in.inv_alpha_p, alloc.compute_physical, in.compute);
    }
    const double usable = (in.c_finite ? alloc.compute_cognitive : 0.0) +
                          (in.p_finite ? alloc.compute_physical : 0.0);
    residual = std::max(residual, std::abs(in.compute - usable) / in.compute);
  }
  if (!in.c_finite && alloc.compute_cognitive > 0.0) residual = kInf;
  if (!in.p_finite && alloc.compute_physical > 0.0) residual = kInf;
  return residual;
}

AutomationFlags automation_flags(const AllocationResult& result,
                                 const TaskPair& tasks,
                                 const ResourceState& resources,
                                 const ProductionSpec& spec) {
  AutomationFlags flags;
  const double L = resources.labor;
  flags.cognitive_allocation = result.allocation.labor_cognitive <= kAutomationEps * L;
  flags.physical_allocation = result.allocation.labor_physical <= kAutomationEps * L;

  const double ratio = (1.0 - spec.beta()) / spec.beta();
  if (tasks.cognitive.cost.is_finite()) {
    flags.cognitive_threshold =
        resources.compute >= ratio * tasks.cognitive.cost.value() * L;
  }
  if (tasks.physical.cost.is_finite()) {
    flags.physical_threshold =
        resources.compute >= ratio * tasks.physical.cost.value() * L;
  }
  return flags;
}

}  // namespace taskgrowth
