#include "doctest.h"

#include <cmath>

#include "vmplace/error.hpp"
#include "vmplace/objectives.hpp"

using namespace vmp;

namespace {

ServerLoad active(double u)
{
    ServerLoad l;
    l.utilization = u;
    l.active = true;
    return l;
}

const ServerLoad idle{};

}  // namespace

TEST_CASE("server loads of the one-server example")
{
    const PlacementProblem p({{10, 16}}, {{2, 4}, {3, 4}});
    const auto loads = server_loads(p, Placement{{0, 0}});
    REQUIRE(loads.size() == 1);
    CHECK(loads[0].cpu_used == 5.0);
    CHECK(loads[0].mem_used == 8.0);
    CHECK(loads[0].utilization == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(loads[0].active);
    CHECK(evaluate(p, Placement{{0, 0}}) == ObjectiveVector{0.5, 0.0, 1.0, true});
}

TEST_CASE("idle and full servers")
{
    const PlacementProblem p({{10, 16}, {4, 4}}, {{4, 4}});
    const auto loads = server_loads(p, Placement{{1}});
    CHECK_FALSE(loads[0].active);
    CHECK(loads[0].utilization == 0.0);
    CHECK(loads[1].utilization == 1.0);
}

TEST_CASE("utilization is the mean over active servers")
{
    const std::vector<ServerLoad> even{active(0.5), active(0.5)};
    CHECK(eval_utilization(even) == 0.5);
    const std::vector<ServerLoad> one{active(1.0), idle, idle, idle};
    CHECK(eval_utilization(one) == 1.0);
    const std::vector<ServerLoad> split{active(0.2), active(0.8)};
    CHECK(eval_utilization(split) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_raw_utilization_sum(split) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("load balance is the population standard deviation")
{
    const std::vector<ServerLoad> even{active(0.5), active(0.5)};
    CHECK(eval_load_balance(even) == 0.0);
    const std::vector<ServerLoad> split{active(0.2), active(0.8), idle};
    CHECK(std::abs(eval_load_balance(split) - 0.3) < 1e-12);
    const std::vector<ServerLoad> single{active(0.7)};
    CHECK(eval_load_balance(single) == 0.0);
    const std::vector<ServerLoad> none{idle};
    CHECK_THROWS_AS(eval_load_balance(none), Error);
}

TEST_CASE("active fraction and waste")
{
    const std::vector<ServerLoad> half{active(0.2), idle, active(0.8), idle};
    CHECK(eval_active_fraction(half) == 0.5);
    CHECK(count_active(half) == 2);
    CHECK(std::abs(eval_resource_waste(half) - 0.5) < 1e-12);
    const std::vector<ServerLoad> full{active(1.0)};
    CHECK(eval_active_fraction(full) == 1.0);
    CHECK(eval_resource_waste(full) == 0.0);
    const std::vector<ServerLoad> mixed{active(0.3), active(0.9), active(0.45)};
    CHECK(eval_resource_waste(mixed) == doctest::Approx(1.0 - eval_utilization(mixed)));
}

TEST_CASE("feasibility check reports violations")
{
    const PlacementProblem p({{10, 16}, {10, 16}}, {{6, 4}, {6, 4}});
    const auto bad = check_feasible(p, Placement{{0, 0}});
    CHECK_FALSE(bad.feasible);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].server == 0);
    CHECK(bad.violations[0].resource == Resource::cpu);
    CHECK(bad.violations[0].overload == doctest::Approx(2.0));
    CHECK(check_feasible(p, Placement{{0, 1}}).feasible);

    const PlacementProblem exact({{10, 16}}, {{10, 16}});
    CHECK(check_feasible(exact, Placement{{0}}).feasible);
    // Decimal fractions that sum to the capacity only up to rounding.
    const PlacementProblem tenths({{1, 1}}, {{0.1, 0.1}, {0.2, 0.2}, {0.7, 0.7}});
    CHECK(check_feasible(tenths, Placement{{0, 0, 0}}).feasible);
}

TEST_CASE("dominance")
{
    CHECK(dominates({0.9, 0.1, 0.5, true}, {0.8, 0.2, 0.6, true}));
    CHECK_FALSE(dominates({0.9, 0.3, 0.5, true}, {0.8, 0.2, 0.6, true}));
    CHECK(dominates({0.1, 0.9, 1.0, true}, {0.99, 0.0, 0.1, false}));
    CHECK_FALSE(dominates({0.99, 0.0, 0.1, false}, {0.1, 0.9, 1.0, true}));
    const ObjectiveVector same{0.5, 0.1, 0.5, true};
    CHECK_FALSE(dominates(same, same));
}

TEST_CASE("scalarization")
{
    ScalarWeights util_only{1, 0, 0, 10};
    CHECK(scalarize({1.0, 0.0, 0.4, true}, util_only) == 0.0);
    const ScalarWeights thirds;
    CHECK(std::abs(scalarize({0.5, 0.3, 0.5, true}, thirds) - 1.3 / 3.0) < 1e-12);
    const double feasible = scalarize({0.5, 0.3, 0.5, true}, thirds);
    CHECK(scalarize({0.5, 0.3, 0.5, false}, thirds) - feasible == doctest::Approx(10.0));
    ScalarWeights negative{-1, 1, 1, 10};
    CHECK_THROWS_AS(negative.validate(), Error);
}
