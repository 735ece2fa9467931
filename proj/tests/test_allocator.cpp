#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "taskgrowth/allocator.hpp"

using namespace taskgrowth;
using tg_test::baseline_scenario;
using tg_test::rel_diff;
using tg_test::two_tasks;

namespace {

const Scenario kBase = baseline_scenario();

AllocationResult solve(double q, double labor = 1e9) {
  return allocate({q, labor}, kBase.tasks, kBase.production);
}

}  // namespace

TEST_CASE("no compute: Cobb-Douglas splits labor by exponents") {
  const auto r = solve(0.0);
  CHECK(r.allocation.labor_cognitive == doctest::Approx(5e8).epsilon(1e-12));
  CHECK(r.allocation.labor_physical == doctest::Approx(5e8).epsilon(1e-12));
  CHECK(r.allocation.compute_cognitive == 0.0);
  CHECK(r.allocation.compute_physical == 0.0);
  CHECK(r.labor_share == 1.0);
  CHECK(r.compute_share == 0.0);
  // Shadow rent: marginal value of the first FLOP.
  CHECK(r.rent == doctest::Approx(0.5 * r.output / 5e8 / 1e14).epsilon(1e-12));
  CHECK(r.wage == doctest::Approx(0.5 * r.output / 5e8).epsilon(1e-12));
}

TEST_CASE("cognitive automated at Q = 1e23, labor share = beta") {
  const auto r = solve(1e23);
  CHECK(r.allocation.labor_cognitive == 0.0);
  CHECK(r.allocation.compute_cognitive == 1e23);
  CHECK(r.allocation.labor_physical == 1e9);
  CHECK(r.allocation.compute_physical == 0.0);
  CHECK(std::abs(r.labor_share - 0.5) <= 1e-12);
  CHECK(std::abs(r.wage * 1e9 / r.output - 0.5) <= 1e-12);
}

TEST_CASE("interior split at Q = 1e22: exact competitive share") {
  const auto r = solve(1e22);
  // X_c = X_p = 5.5e8; compute income is 0.5 Y (1e8 / 5.5e8), labor gets 10/11.
  CHECK(r.allocation.labor_cognitive == doctest::Approx(4.5e8).epsilon(1e-10));
  CHECK(r.allocation.labor_physical == doctest::Approx(5.5e8).epsilon(1e-10));
  CHECK(r.labor_share == doctest::Approx(10.0 / 11.0).epsilon(1e-9));
  CHECK(r.compute_share == doctest::Approx(1.0 / 11.0).epsilon(1e-9));
  const auto oracle = brute_force_allocate({1e22, 1e9}, kBase.tasks, kBase.production, 41);
  CHECK(rel_diff(oracle.output, r.output) <= 1e-6);
}

TEST_CASE("income exhaustion at every tested optimum") {
  for (const double q : {0.0, 1e20, 1e22, 1e23, 1e26, 1e31, 1e35}) {
    const auto r = solve(q);
    const double income = r.wage * 1e9 + r.rent * (r.allocation.compute_cognitive +
                                                   r.allocation.compute_physical);
    CHECK(rel_diff(income, r.output) <= 1e-9);
    CHECK(std::abs(r.labor_share + r.compute_share - 1.0) <= 1e-9);
  }
}

TEST_CASE("optimizer weakly beats the refined brute-force oracle") {
  for (const auto& in : tg_test::random_instances(100, 20240817)) {
    const auto fast = allocate(in.resources, in.tasks, in.spec);
    const auto oracle = brute_force_allocate(in.resources, in.tasks, in.spec, 101);
    CHECK(fast.output >= oracle.output * (1.0 - 1e-6));
    CHECK(rel_diff(fast.output, oracle.output) <= 1e-6);
    CHECK(kkt_residual(fast.allocation, in.resources, in.tasks, in.spec) <= 1e-9);
  }
}

TEST_CASE("feasibility of returned allocations") {
  for (const auto& in : tg_test::random_instances(50, 99)) {
    const auto r = allocate(in.resources, in.tasks, in.spec);
    const auto& a = r.allocation;
    CHECK(a.labor_cognitive >= 0.0);
    CHECK(a.labor_physical >= 0.0);
    CHECK(a.compute_cognitive >= 0.0);
    CHECK(a.compute_physical >= 0.0);
    CHECK(a.labor_cognitive + a.labor_physical <=
          in.resources.labor * (1.0 + 1e-12));
    CHECK(a.compute_cognitive + a.compute_physical <=
          in.resources.compute * (1.0 + 1e-12));
  }
}

TEST_CASE("scale invariance of shares under CRS") {
  for (const double k : {1e-3, 0.1, 10.0, 1e4}) {
    const auto base = solve(1e22);
    const auto scaled = allocate({k * 1e22, k * 1e9}, kBase.tasks, kBase.production);
    CHECK(std::abs(base.labor_share - scaled.labor_share) <= 1e-9);
  }
}

TEST_CASE("labor share is non-increasing in compute") {
  double prev = 2.0;
  for (double q = 1e18; q < 1e36; q *= 1.5) {
    const auto r = solve(q);
    CHECK(r.labor_share <= prev + 1e-9);
    prev = r.labor_share;
  }
}

TEST_CASE("no compute ever flows to an infinite-cost task") {
  const auto tasks = two_tasks(AutomationCost::finite(1e14), AutomationCost::infinite());
  for (const double q : {1e20, 1e25, 1e33}) {
    const auto r = allocate({q, 1e9}, tasks, kBase.production);
    CHECK(r.allocation.compute_physical == 0.0);
    CHECK(r.allocation.compute_cognitive == q);
  }
  const auto both = two_tasks(AutomationCost::infinite(), AutomationCost::infinite());
  const auto r = allocate({1e25, 1e9}, both, kBase.production);
  CHECK(r.allocation.compute_cognitive == 0.0);
  CHECK(r.allocation.compute_physical == 0.0);
  CHECK(r.labor_share == 1.0);
}

TEST_CASE("brute force recovers the symmetric analytic optimum") {
  const auto r = brute_force_allocate({0.0, 1e9}, kBase.tasks, kBase.production, 41);
  CHECK(r.allocation.labor_physical == doctest::Approx(5e8).epsilon(1e-2));
  CHECK_THROWS_AS(
      brute_force_allocate({0.0, 1e9}, kBase.tasks, kBase.production, 5),
      ValidationError);
}

TEST_CASE("allocator works for CES production") {
  ProductionSpec ces;
  ces.family = Ces{0.5, -1.0};
  for (const double q : {0.0, 1e21, 1e24, 1e28}) {
    const auto fast = allocate({q, 1e9}, kBase.tasks, ces);
    const auto oracle = brute_force_allocate({q, 1e9}, kBase.tasks, ces, 61);
    CHECK(fast.output >= oracle.output * (1.0 - 1e-6));
    CHECK(kkt_residual(fast.allocation, {q, 1e9}, kBase.tasks, ces) <= 1e-9);
  }
}

TEST_CASE("degenerate and infeasible economies are typed errors") {
  CHECK_THROWS_AS(allocate({0.0, 0.0}, kBase.tasks, kBase.production),
                  DegenerateEconomy);
  const auto tasks = two_tasks(AutomationCost::finite(1e14), AutomationCost::infinite());
  CHECK_THROWS_AS(allocate({1e22, 0.0}, tasks, kBase.production), InfeasibleSpec);
}

TEST_CASE("automation flags: threshold view matches the crossing points") {
  struct Row {
    double q;
    bool cognitive;
    bool physical;
  };
  for (const auto& row : {Row{1e22, false, false}, Row{1e23, true, false},
                          Row{4.85e30, true, true}}) {
    const ResourceState res{row.q, 1e9};
    const auto r = allocate(res, kBase.tasks, kBase.production);
    const auto flags = automation_flags(r, kBase.tasks, res, kBase.production);
    CHECK(flags.cognitive_threshold == row.cognitive);
    CHECK(flags.physical_threshold == row.physical);
    // The allocation view agrees for cognitive work: labor exits that class
    // exactly at the threshold.
    CHECK(flags.cognitive_allocation == row.cognitive);
    // It never agrees for physical work past its threshold: with a finite
    // cost ratio alpha_c << alpha_p the physical marginal product stays
    // above the cognitive one, so all labor remains in physical tasks.
    CHECK(!flags.physical_allocation);
    if (row.cognitive) CHECK(r.allocation.labor_physical == 1e9);
  }
}

TEST_CASE("labor-augmenting productivity scales the wage") {
  ProductionSpec spec = kBase.production;
  spec.labor_augmenting = 2.0;
  const auto r = allocate({0.0, 1e9}, kBase.tasks, spec);
  // Effective labor doubles; output doubles; the share stays 1.
  CHECK(r.output == doctest::Approx(2.0 * solve(0.0).output).epsilon(1e-12));
  CHECK(r.labor_share == 1.0);
}
