#include "doctest.h"

#include <cmath>

#include "vmplace/baselines.hpp"
#include "vmplace/error.hpp"

using namespace vmp;

namespace {

PlacementProblem split_instance()
{
    return PlacementProblem({{10, 10}, {10, 10}}, {{5, 5}, {5, 5}, {5, 5}, {5, 5}});
}

}  // namespace

TEST_CASE("brute force on the 2-2 split instance")
{
    const auto p = split_instance();
    const auto r = brute_force(p, ScalarWeights{});
    CHECK(r.enumerated == 16);
    CHECK(r.objectives.load_balance == 0.0);
    CHECK(r.objectives.utilization == 1.0);
    CHECK(r.objectives.feasible);
    // First optimum in odometer order.
    CHECK(r.best == Placement{{0, 0, 1, 1}});
    REQUIRE(r.pareto.size() == 1);
    CHECK(r.pareto[0].multiplicity == 6);
}

TEST_CASE("brute force with one vm picks the best server")
{
    const PlacementProblem p({{10, 10}, {4, 4}, {20, 20}}, {{4, 4}});
    const auto r = brute_force(p, ScalarWeights{});
    CHECK(r.enumerated == 3);
    CHECK(r.best == Placement{{1}});
}

TEST_CASE("brute force pareto set is exact")
{
    GeneratorConfig gen;
    gen.m = 3;
    gen.n = 5;
    gen.seed = 8;
    gen.demand_floor_ratio = 0.5;
    gen.demand_ceiling_ratio = 0.6;
    const auto p = generate_instance(gen);
    const auto r = brute_force(p, ScalarWeights{});
    // Every enumerated placement is dominated by, or equal to, a front member.
    Placement s;
    s.assign.assign(5, 0);
    for (std::uint64_t k = 0; k < 243; ++k) {
        std::uint64_t code = k;
        for (std::size_t i = 5; i-- > 0;) {
            s.assign[i] = static_cast<std::uint32_t>(code % 3);
            code /= 3;
        }
        const auto o = evaluate(p, s);
        bool covered = false;
        for (const auto& point : r.pareto)
            covered = covered || point.objectives == o || dominates(point.objectives, o);
        CHECK(covered);
        CHECK(r.scalar <= scalarize(o, ScalarWeights{}));
    }
    for (const auto& a : r.pareto)
        for (const auto& b : r.pareto)
            CHECK_FALSE(dominates(a.objectives, b.objectives));
}

TEST_CASE("brute force guard")
{
    std::vector<ResourceVector> servers(10, {10, 10});
    std::vector<ResourceVector> vms(8, {1, 1});
    const PlacementProblem p(servers, vms);
    try {
        brute_force(p, ScalarWeights{});
        FAIL("expected the guard to trip");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::instance_too_large);
    }
}

TEST_CASE("ffd packs the 2-2 split and is deterministic")
{
    const auto p = split_instance();
    const auto s = solve_ffd(p);
    CHECK(check_feasible(p, s).feasible);
    CHECK(s == Placement{{0, 0, 1, 1}});
    CHECK(solve_ffd(p) == s);
    const PlacementProblem one({{10, 10}, {10, 10}}, {{3, 3}});
    CHECK(solve_ffd(one) == Placement{{0}});
}

TEST_CASE("ga and pso match brute force on the 2-2 split")
{
    const auto p = split_instance();
    const ScalarWeights w;
    const double optimum = brute_force(p, w).scalar;

    GaConfig ga;
    ga.pop = 20;
    ga.generations = 50;
    ga.seed = 3;
    const auto g = solve_ga(p, ga);
    CHECK(std::abs(g.best.scalar - optimum) < 1e-12);

    PsoConfig pso;
    pso.pop = 20;
    pso.iterations = 50;
    pso.seed = 3;
    const auto q = solve_pso(p, pso);
    CHECK(std::abs(q.best.scalar - optimum) < 1e-12);
}

TEST_CASE("baseline runs are deterministic with monotone history")
{
    GeneratorConfig gen;
    gen.m = 5;
    gen.n = 30;
    gen.seed = 6;
    const auto p = generate_instance(gen);

    GaConfig ga;
    ga.pop = 20;
    ga.generations = 40;
    ga.seed = 9;
    const auto g1 = solve_ga(p, ga);
    const auto g2 = solve_ga(p, ga);
    CHECK(g1.history == g2.history);
    CHECK(g1.best.decoded == g2.best.decoded);
    for (std::size_t i = 1; i < g1.history.size(); ++i)
        CHECK(g1.history[i] <= g1.history[i - 1]);
    CHECK(g1.best.scalar == scalarize(evaluate(p, g1.best.decoded), ga.weights));

    PsoConfig pso;
    pso.pop = 20;
    pso.iterations = 40;
    pso.seed = 9;
    const auto q1 = solve_pso(p, pso);
    const auto q2 = solve_pso(p, pso);
    CHECK(q1.history == q2.history);
    CHECK(q1.best.decoded == q2.best.decoded);
    for (std::size_t i = 1; i < q1.history.size(); ++i)
        CHECK(q1.history[i] <= q1.history[i - 1]);
    CHECK(q1.best.scalar == scalarize(evaluate(p, q1.best.decoded), pso.weights));
}

TEST_CASE("baseline configuration checks")
{
    const auto p = split_instance();
    GaConfig ga;
    ga.crossover_rate = 2.0;
    CHECK_THROWS_AS(solve_ga(p, ga), Error);
    PsoConfig pso;
    pso.pop = 1;
    CHECK_THROWS_AS(solve_pso(p, pso), Error);
}
