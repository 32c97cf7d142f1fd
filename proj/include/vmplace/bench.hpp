#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmplace/cuckoo.hpp"
#include "vmplace/instance.hpp"
#include "vmplace/objectives.hpp"
#include "vmplace/search.hpp"

namespace vmp {

enum class Algorithm { lamocs, ga, pso, ffd };

std::string_view algorithm_name(Algorithm a) noexcept;
// Throws Error(unknown_algorithm).
Algorithm parse_algorithm(std::string_view name);
// Stable numeric id used in seed derivation.
std::uint64_t algorithm_id(Algorithm a) noexcept;

// Knobs shared by every algorithm run from the harness. The population size
// and cycle budget apply to all three population solvers alike.
struct RunOptions {
    std::size_t pop = 100;
    std::size_t cycles = 500;
    ScalarWeights weights;
    // LAMOCS
    double p_a = 0.25;
    double reward_a = 0.5;
    double penalty_b = 0.05;
    double la_fraction = 0.5;
    LaScope la_scope = LaScope::both;
    // GA
    double crossover_rate = 0.7;
    double mutation_rate = 0.05;
    // PSO
    double inertia = 0.7;
    double c1 = 1.5;
    double c2 = 1.5;

    TraceSink trace;
};

struct SolveOutcome {
    Placement placement;
    SolveResult result;  // for ffd: best only, a one-entry history
};

SolveOutcome run_algorithm(const PlacementProblem& p, Algorithm a, const RunOptions& opt,
                           std::uint64_t seed);

struct RunReport {
    std::string algorithm;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t rep = 0;
    std::size_t pop = 0;
    std::uint64_t seed = 0;
    double utilization = 0.0;
    double load_balance = 0.0;
    std::size_t active_servers = 0;
    double resource_waste = 0.0;
    bool feasible = false;
    double scalar = 0.0;
    double wall_time_ms = 0.0;
    std::size_t cycles = 0;
    Placement placement;
    // Empty on success; otherwise the run failed and the metrics are unset.
    std::string error;
    // JSON lines, filled only when the sweep collects traces.
    std::string trace;
};

// Every metric is recomputed from `s` through the objectives module.
RunReport make_report(const PlacementProblem& p, const Placement& s, const ScalarWeights& w);

std::string report_to_json(const RunReport& r);
std::string report_to_csv(const RunReport& r, bool with_header);

struct SweepConfig {
    std::vector<std::size_t> vm_counts{20, 40, 60, 80, 100};
    std::size_t m = 5;
    std::size_t reps = 10;
    std::vector<Algorithm> algorithms{Algorithm::lamocs, Algorithm::ga, Algorithm::pso};
    std::uint64_t base_seed = 1;
    GeneratorConfig generator;  // m, n and seed are filled in per run
    RunOptions options;
    // When non-empty the sweep varies the population size instead, at
    // n = pop_sweep_n.
    std::vector<std::size_t> pop_sizes;
    std::size_t pop_sweep_n = 100;
    std::size_t threads = 1;
    bool collect_traces = false;

    void validate() const;
};

// run_seed = hash64({base_seed, n, algorithm_id, rep}) (pop appended in
// pop-sweep mode); instance_seed uses the fixed stream id below in place of
// the algorithm id, so every algorithm sees the same instances.
inline constexpr std::uint64_t kInstanceStream = 0;
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t n, Algorithm a, std::size_t rep,
                       std::optional<std::size_t> pop = std::nullopt);
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t rep);

struct AggregateRow {
    std::string algorithm;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t pop = 0;
    std::size_t runs = 0;  // successful runs
    // mean / population standard deviation
    double utilization[2]{};
    double load_balance[2]{};
    double active_servers[2]{};
    double resource_waste[2]{};
    double feasible[2]{};
    double wall_time_ms[2]{};
};

struct SweepResult {
    std::vector<RunReport> runs;  // ordered by (n or pop, algorithm, rep)
    std::vector<AggregateRow> aggregates;
    bool pop_sweep = false;
};

SweepResult run_sweep(const SweepConfig& cfg);
std::vector<AggregateRow> aggregate(const std::vector<RunReport>& runs);

std::string raw_csv(const SweepResult& r);
std::string aggregate_csv(const SweepResult& r);
std::string raw_json(const SweepResult& r);
std::string aggregate_json(const SweepResult& r);
// Traces of every run in sweep order.
std::string sweep_trace(const SweepResult& r);
std::string sweep_metadata_json(const SweepConfig& cfg, const SweepResult& r);

struct OracleCheckConfig {
    std::size_t count = 20;
    std::size_t max_n = 6;
    std::size_t max_m = 3;
    std::vector<Algorithm> algorithms{Algorithm::lamocs};
    std::uint64_t seed = 1;
    RunOptions options = [] {
        RunOptions o;
        o.pop = 50;
        o.cycles = 200;
        return o;
    }();
    GeneratorConfig generator;

    void validate() const;
};

struct OracleCase {
    std::size_t n = 0;
    std::size_t m = 0;
    double optimum = 0.0;
    std::vector<double> scalars;  // per algorithm, same order as the config
    std::vector<double> wall_time_ms;
};

struct OracleCheckResult {
    std::vector<Algorithm> algorithms;
    std::vector<std::size_t> matches;  // per algorithm
    std::vector<OracleCase> cases;

    double match_fraction(std::size_t algorithm_index) const;
};

inline constexpr double kOracleTolerance = 1e-9;

OracleCheckResult oracle_check(const OracleCheckConfig& cfg);
std::string oracle_summary_json(const OracleCheckResult& r);

// One JSON line; `context` fields (if any) come first.
std::string trace_line(const TraceRecord& t, const std::vector<std::pair<std::string, std::string>>& context = {});

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace vmp
