#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "vmplace/bench.hpp"
#include "vmplace/error.hpp"

using namespace vmp;

namespace {

SweepConfig small_sweep()
{
    SweepConfig cfg;
    cfg.vm_counts = {8, 12};
    cfg.m = 3;
    cfg.reps = 3;
    cfg.options.pop = 8;
    cfg.options.cycles = 10;
    return cfg;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream fields(line);
        while (std::getline(fields, cell, ','))
            cells.push_back(cell);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("algorithm names")
{
    for (auto a : {Algorithm::lamocs, Algorithm::ga, Algorithm::pso, Algorithm::ffd})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    try {
        parse_algorithm("sa");
        FAIL("expected unknown algorithm");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unknown_algorithm);
    }
}

TEST_CASE("seed derivation is the documented hash")
{
    CHECK(run_seed(1, 20, Algorithm::lamocs, 0) == hash64({1, 20, 1, 0}));
    CHECK(run_seed(1, 20, Algorithm::pso, 4, 50) == hash64({1, 20, 3, 4, 50}));
    CHECK(instance_seed(1, 20, 4) == hash64({1, 20, kInstanceStream, 4}));
}

TEST_CASE("reports are recomputed from the placement")
{
    const PlacementProblem p({{10, 10}, {10, 10}}, {{5, 5}, {5, 5}, {5, 5}, {5, 5}});
    const auto r = make_report(p, Placement{{0, 0, 1, 1}}, ScalarWeights{});
    CHECK(r.utilization == 1.0);
    CHECK(r.load_balance == 0.0);
    CHECK(r.active_servers == 2);
    CHECK(r.resource_waste == 0.0);
    CHECK(r.feasible);
    CHECK(report_to_csv(r, true) ==
          "algorithm,n,m,rep,seed,utilization,load_balance,active_servers,resource_waste,"
          "feasible,wall_time_ms\n,4,2,0,0,1,0,2,0,true,0\n");
}

TEST_CASE("sweep row counts and ordering")
{
    const auto cfg = small_sweep();
    const auto r = run_sweep(cfg);
    CHECK(r.runs.size() == 2 * 3 * 3);
    CHECK(r.aggregates.size() == 2 * 3);
    CHECK(r.runs.front().algorithm == "lamocs");
    CHECK(r.runs.front().n == 8);
    CHECK(r.runs.back().algorithm == "pso");
    CHECK(r.runs.back().n == 12);
    CHECK(r.runs.back().rep == 2);

    const auto raw = parse_csv(raw_csv(r));
    CHECK(raw.size() == 1 + 18);
    CHECK(raw[0].size() == 11);
    const auto agg = parse_csv(aggregate_csv(r));
    CHECK(agg.size() == 1 + 6);
    CHECK(agg[0][4] == "utilization_mean");
    CHECK(agg[0].back() == "wall_time_ms_std");
}

TEST_CASE("aggregates equal mean and std of the raw rows")
{
    const auto r = run_sweep(small_sweep());
    const auto raw = parse_csv(raw_csv(r));
    const auto agg = parse_csv(aggregate_csv(r));
    for (std::size_t row = 1; row < agg.size(); ++row) {
        for (std::size_t metric = 0; metric < 6; ++metric) {
            std::vector<double> xs;
            for (std::size_t k = 1; k < raw.size(); ++k) {
                if (raw[k][0] != agg[row][0] || raw[k][1] != agg[row][1])
                    continue;
                const std::string& cell = raw[k][5 + metric];
                xs.push_back(cell == "true" ? 1.0 : cell == "false" ? 0.0 : std::stod(cell));
            }
            REQUIRE(xs.size() == 3);
            double mean = 0;
            for (double x : xs)
                mean += x;
            mean /= 3;
            double var = 0;
            for (double x : xs)
                var += (x - mean) * (x - mean);
            const double sd = std::sqrt(var / 3);
            CHECK(std::stod(agg[row][4 + 2 * metric]) == doctest::Approx(mean).epsilon(1e-12));
            CHECK(std::stod(agg[row][5 + 2 * metric]) ==
                  doctest::Approx(sd).epsilon(1e-9).scale(1e-12));
        }
    }
}

TEST_CASE("single repetition gives zero std")
{
    auto cfg = small_sweep();
    cfg.reps = 1;
    const auto r = run_sweep(cfg);
    for (const auto& row : r.aggregates)
        for (const auto* slot : {row.utilization, row.load_balance, row.active_servers,
                                 row.resource_waste, row.feasible, row.wall_time_ms})
            CHECK(slot[1] == 0.0);
}

TEST_CASE("sweeps are deterministic across thread counts")
{
    auto cfg = small_sweep();
    cfg.collect_traces = true;
    const auto a = run_sweep(cfg);
    cfg.threads = 3;
    const auto b = run_sweep(cfg);
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].seed == b.runs[i].seed);
        CHECK(a.runs[i].utilization == b.runs[i].utilization);
        CHECK(a.runs[i].load_balance == b.runs[i].load_balance);
        CHECK(a.runs[i].feasible == b.runs[i].feasible);
    }
    CHECK(sweep_trace(a) == sweep_trace(b));
    CHECK_FALSE(sweep_trace(a).empty());
}

TEST_CASE("failed runs are recorded and the sweep continues")
{
    auto cfg = small_sweep();
    cfg.vm_counts = {2, 8};  // n = 2 is not above m = 3
    const auto r = run_sweep(cfg);
    CHECK(r.runs.size() == 18);
    std::size_t failed = 0;
    for (const auto& run : r.runs)
        failed += run.error.empty() ? 0 : 1;
    CHECK(failed == 9);
    CHECK(sweep_metadata_json(cfg, r).find("\"failures\"") != std::string::npos);
    for (const auto& row : r.aggregates)
        CHECK(row.runs == (row.n == 2 ? 0u : 3u));
}

TEST_CASE("population sweep")
{
    auto cfg = small_sweep();
    cfg.pop_sizes = {4, 8};
    cfg.pop_sweep_n = 10;
    cfg.algorithms = {Algorithm::lamocs};
    const auto r = run_sweep(cfg);
    CHECK(r.pop_sweep);
    CHECK(r.runs.size() == 2 * 3);
    const auto raw = parse_csv(raw_csv(r));
    CHECK(raw[0][3] == "pop");
    CHECK(raw[1][3] == "4");
}

TEST_CASE("oracle check")
{
    OracleCheckConfig cfg;
    cfg.count = 0;
    const auto empty = oracle_check(cfg);
    CHECK(empty.cases.empty());
    CHECK(empty.match_fraction(0) == 1.0);

    cfg.count = 4;
    cfg.algorithms = {Algorithm::lamocs, Algorithm::ffd};
    cfg.options.pop = 20;
    cfg.options.cycles = 40;
    const auto r = oracle_check(cfg);
    CHECK(r.cases.size() == 4);
    for (const auto& c : r.cases) {
        CHECK(c.n <= 6);
        CHECK(c.m <= 3);
        CHECK(c.n > c.m);
        for (double s : c.scalars)
            CHECK(s >= c.optimum - 1e-12);
    }
    CHECK(oracle_summary_json(r) == oracle_summary_json(oracle_check(cfg)));

    cfg.max_n = 20;
    CHECK_THROWS_AS(oracle_check(cfg), Error);
}

TEST_CASE("double formatting round trips")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
