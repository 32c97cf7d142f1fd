#include "vmplace/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vmplace/baselines.hpp"
#include "vmplace/error.hpp"
#include "vmplace/random.hpp"

namespace vmp {

using ordered_json = nlohmann::ordered_json;

std::string_view algorithm_name(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::lamocs: return "lamocs";
    case Algorithm::ga: return "ga";
    case Algorithm::pso: return "pso";
    case Algorithm::ffd: return "ffd";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    for (auto a : {Algorithm::lamocs, Algorithm::ga, Algorithm::pso, Algorithm::ffd})
        if (algorithm_name(a) == name)
            return a;
    throw Error(ErrorCode::unknown_algorithm,
                "unknown algorithm '" + std::string(name) + "' (expected lamocs, ga, pso or ffd)");
}

std::uint64_t algorithm_id(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::lamocs: return 1;
    case Algorithm::ga: return 2;
    case Algorithm::pso: return 3;
    case Algorithm::ffd: return 4;
    }
    return 0;
}

std::string format_double(double x)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

SolveOutcome run_algorithm(const PlacementProblem& p, Algorithm a, const RunOptions& opt,
                           std::uint64_t seed)
{
    SolveOutcome out;
    switch (a) {
    case Algorithm::lamocs: {
        SolverConfig cfg;
        cfg.pop_size = opt.pop;
        cfg.max_cycles = opt.cycles;
        cfg.p_a = opt.p_a;
        cfg.reward_a = opt.reward_a;
        cfg.penalty_b = opt.penalty_b;
        cfg.la_fraction = opt.la_fraction;
        cfg.la_scope = opt.la_scope;
        cfg.weights = opt.weights;
        cfg.seed = seed;
        cfg.trace = opt.trace;
        out.result = solve_lamocs(p, cfg);
        break;
    }
    case Algorithm::ga: {
        GaConfig cfg;
        cfg.pop = opt.pop;
        cfg.generations = opt.cycles;
        cfg.crossover_rate = opt.crossover_rate;
        cfg.mutation_rate = opt.mutation_rate;
        cfg.weights = opt.weights;
        cfg.seed = seed;
        cfg.trace = opt.trace;
        out.result = solve_ga(p, cfg);
        break;
    }
    case Algorithm::pso: {
        PsoConfig cfg;
        cfg.pop = opt.pop;
        cfg.iterations = opt.cycles;
        cfg.inertia = opt.inertia;
        cfg.c1 = opt.c1;
        cfg.c2 = opt.c2;
        cfg.weights = opt.weights;
        cfg.seed = seed;
        cfg.trace = opt.trace;
        out.result = solve_pso(p, cfg);
        break;
    }
    case Algorithm::ffd: {
        opt.weights.validate();
        const auto start = std::chrono::steady_clock::now();
        const Placement s = solve_ffd(p);
        Nest nest;
        nest.decoded = s;
        nest.position.reserve(s.size());
        for (auto server : s.assign)
            nest.position.push_back(static_cast<double>(server + 1));
        nest.objectives = evaluate(p, s);
        nest.scalar = scalarize(nest.objectives, opt.weights);
        out.result.best = nest;
        out.result.archive = {nest};
        out.result.history = {nest.scalar};
        out.result.cycles_run = 1;
        out.result.wall_time = std::chrono::steady_clock::now() - start;
        break;
    }
    }
    out.placement = out.result.best.decoded;
    return out;
}

RunReport make_report(const PlacementProblem& p, const Placement& s, const ScalarWeights& w)
{
    const auto loads = server_loads(p, s);
    RunReport r;
    r.n = p.num_vms();
    r.m = p.num_servers();
    r.utilization = eval_utilization(loads);
    r.load_balance = eval_load_balance(loads);
    r.active_servers = count_active(loads);
    r.resource_waste = eval_resource_waste(loads);
    r.feasible = check_feasible(p, s).feasible;
    r.scalar = scalarize(evaluate(p, s), w);
    r.placement = s;
    return r;
}

namespace {

ordered_json report_object(const RunReport& r, bool with_rep, bool with_pop)
{
    ordered_json doc;
    doc["algorithm"] = r.algorithm;
    doc["n"] = r.n;
    doc["m"] = r.m;
    if (with_pop)
        doc["pop"] = r.pop;
    if (with_rep)
        doc["rep"] = r.rep;
    doc["seed"] = r.seed;
    if (!r.error.empty()) {
        doc["error"] = r.error;
        return doc;
    }
    doc["utilization"] = r.utilization;
    doc["load_balance"] = r.load_balance;
    doc["active_servers"] = r.active_servers;
    doc["resource_waste"] = r.resource_waste;
    doc["feasible"] = r.feasible;
    doc["scalar"] = r.scalar;
    doc["wall_time_ms"] = r.wall_time_ms;
    doc["cycles"] = r.cycles;
    return doc;
}

}  // namespace

std::string report_to_json(const RunReport& r)
{
    return report_object(r, false, false).dump() + "\n";
}

namespace {

constexpr const char* kMetricColumns =
    "utilization,load_balance,active_servers,resource_waste,feasible,wall_time_ms";

void append_run_row(std::ostringstream& out, const RunReport& r, bool with_pop)
{
    out << r.algorithm << ',' << r.n << ',' << r.m << ',';
    if (with_pop)
        out << r.pop << ',';
    out << r.rep << ',' << r.seed << ',';
    if (!r.error.empty()) {
        out << ",,,,,\n";
        return;
    }
    out << format_double(r.utilization) << ',' << format_double(r.load_balance) << ','
        << r.active_servers << ',' << format_double(r.resource_waste) << ','
        << (r.feasible ? "true" : "false") << ',' << format_double(r.wall_time_ms) << '\n';
}

}  // namespace

std::string report_to_csv(const RunReport& r, bool with_header)
{
    std::ostringstream out;
    if (with_header)
        out << "algorithm,n,m,rep,seed," << kMetricColumns << '\n';
    append_run_row(out, r, false);
    return out.str();
}

void SweepConfig::validate() const
{
    auto fail = [](const char* what) { throw Error(ErrorCode::invalid_argument, what); };
    if (reps < 1)
        fail("sweep needs at least one repetition");
    if (pop_sizes.empty() && vm_counts.empty())
        fail("sweep needs at least one vm count");
    if (algorithms.empty())
        fail("sweep needs at least one algorithm");
    if (m < 1)
        fail("sweep needs at least one server");
    for (auto pop : pop_sizes)
        if (pop < 2)
            fail("population sizes must be at least 2");
    options.weights.validate();
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t n, Algorithm a, std::size_t rep,
                       std::optional<std::size_t> pop)
{
    if (pop)
        return hash64({base_seed, n, algorithm_id(a), rep, *pop});
    return hash64({base_seed, n, algorithm_id(a), rep});
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t rep)
{
    return hash64({base_seed, n, kInstanceStream, rep});
}

namespace {

struct Cell {
    std::size_t n;
    std::size_t pop;
    Algorithm algorithm;
    std::size_t rep;
};

RunReport run_cell(const SweepConfig& cfg, const Cell& cell, bool pop_sweep)
{
    RunReport report;
    report.algorithm = std::string(algorithm_name(cell.algorithm));
    report.n = cell.n;
    report.m = cfg.m;
    report.rep = cell.rep;
    report.pop = cell.pop;
    report.seed = run_seed(cfg.base_seed, cell.n, cell.algorithm, cell.rep,
                           pop_sweep ? std::optional<std::size_t>(cell.pop) : std::nullopt);
    try {
        GeneratorConfig gen = cfg.generator;
        gen.m = cfg.m;
        gen.n = cell.n;
        gen.seed = instance_seed(cfg.base_seed, cell.n, cell.rep);
        const PlacementProblem problem = generate_instance(gen);

        RunOptions options = cfg.options;
        options.pop = cell.pop;
        options.trace = nullptr;
        std::string trace;
        if (cfg.collect_traces) {
            const std::vector<std::pair<std::string, std::string>> context{
                {"algorithm", report.algorithm},
                {"n", std::to_string(cell.n)},
                {"pop", std::to_string(cell.pop)},
                {"rep", std::to_string(cell.rep)}};
            options.trace = [&trace, &context](const TraceRecord& t) {
                trace += trace_line(t, context);
            };
        }
        const SolveOutcome outcome = run_algorithm(problem, cell.algorithm, options, report.seed);

        RunReport metrics = make_report(problem, outcome.placement, options.weights);
        metrics.algorithm = report.algorithm;
        metrics.rep = report.rep;
        metrics.pop = report.pop;
        metrics.seed = report.seed;
        metrics.cycles = outcome.result.cycles_run;
        metrics.trace = std::move(trace);
        metrics.wall_time_ms =
            std::chrono::duration<double, std::milli>(outcome.result.wall_time).count();
        return metrics;
    } catch (const std::exception& e) {
        report.error = e.what();
        return report;
    }
}

double mean_of(const std::vector<double>& xs)
{
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double pstdev_of(const std::vector<double>& xs, double mean)
{
    if (xs.empty())
        return 0.0;
    double sum = 0.0;
    for (double x : xs)
        sum += (x - mean) * (x - mean);
    return std::sqrt(sum / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<RunReport>& runs)
{
    std::vector<AggregateRow> rows;
    std::vector<std::vector<const RunReport*>> groups;
    for (const auto& r : runs) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow& row) {
            return row.algorithm == r.algorithm && row.n == r.n && row.m == r.m && row.pop == r.pop;
        });
        if (it == rows.end()) {
            AggregateRow row;
            row.algorithm = r.algorithm;
            row.n = r.n;
            row.m = r.m;
            row.pop = r.pop;
            rows.push_back(row);
            groups.emplace_back();
            it = rows.end() - 1;
        }
        if (r.error.empty())
            groups[static_cast<std::size_t>(it - rows.begin())].push_back(&r);
    }

    for (std::size_t g = 0; g < rows.size(); ++g) {
        auto& row = rows[g];
        const auto& members = groups[g];
        row.runs = members.size();
        auto fill = [&](double (&slot)[2], auto field) {
            std::vector<double> xs;
            for (const auto* r : members)
                xs.push_back(field(*r));
            slot[0] = mean_of(xs);
            slot[1] = pstdev_of(xs, slot[0]);
        };
        fill(row.utilization, [](const RunReport& r) { return r.utilization; });
        fill(row.load_balance, [](const RunReport& r) { return r.load_balance; });
        fill(row.active_servers,
             [](const RunReport& r) { return static_cast<double>(r.active_servers); });
        fill(row.resource_waste, [](const RunReport& r) { return r.resource_waste; });
        fill(row.feasible, [](const RunReport& r) { return r.feasible ? 1.0 : 0.0; });
        fill(row.wall_time_ms, [](const RunReport& r) { return r.wall_time_ms; });
    }
    return rows;
}

SweepResult run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    SweepResult result;
    result.pop_sweep = !cfg.pop_sizes.empty();

    std::vector<Cell> cells;
    if (result.pop_sweep) {
        for (auto pop : cfg.pop_sizes)
            for (auto a : cfg.algorithms)
                for (std::size_t rep = 0; rep < cfg.reps; ++rep)
                    cells.push_back({cfg.pop_sweep_n, pop, a, rep});
    } else {
        for (auto n : cfg.vm_counts)
            for (auto a : cfg.algorithms)
                for (std::size_t rep = 0; rep < cfg.reps; ++rep)
                    cells.push_back({n, cfg.options.pop, a, rep});
    }

    result.runs.resize(cells.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, cells.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            result.runs[i] = run_cell(cfg, cells[i], result.pop_sweep);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cells.size(); i = next++)
                    result.runs[i] = run_cell(cfg, cells[i], result.pop_sweep);
            });
        }
    }
    result.aggregates = aggregate(result.runs);
    return result;
}

std::string raw_csv(const SweepResult& r)
{
    std::ostringstream out;
    out << "algorithm,n,m," << (r.pop_sweep ? "pop," : "") << "rep,seed," << kMetricColumns
        << '\n';
    for (const auto& run : r.runs)
        append_run_row(out, run, r.pop_sweep);
    return out.str();
}

std::string aggregate_csv(const SweepResult& r)
{
    std::ostringstream out;
    out << "algorithm,n,m," << (r.pop_sweep ? "pop," : "") << "runs";
    for (const char* name : {"utilization", "load_balance", "active_servers", "resource_waste",
                             "feasible", "wall_time_ms"})
        out << ',' << name << "_mean," << name << "_std";
    out << '\n';
    for (const auto& row : r.aggregates) {
        out << row.algorithm << ',' << row.n << ',' << row.m << ',';
        if (r.pop_sweep)
            out << row.pop << ',';
        out << row.runs;
        for (const auto* slot : {row.utilization, row.load_balance, row.active_servers,
                                 row.resource_waste, row.feasible, row.wall_time_ms})
            out << ',' << format_double(slot[0]) << ',' << format_double(slot[1]);
        out << '\n';
    }
    return out.str();
}

std::string raw_json(const SweepResult& r)
{
    ordered_json doc = ordered_json::array();
    for (const auto& run : r.runs)
        doc.push_back(report_object(run, true, r.pop_sweep));
    return doc.dump(2) + "\n";
}

std::string aggregate_json(const SweepResult& r)
{
    ordered_json doc = ordered_json::array();
    for (const auto& row : r.aggregates) {
        ordered_json item;
        item["algorithm"] = row.algorithm;
        item["n"] = row.n;
        item["m"] = row.m;
        if (r.pop_sweep)
            item["pop"] = row.pop;
        item["runs"] = row.runs;
        const std::pair<const char*, const double*> metrics[] = {
            {"utilization", row.utilization},     {"load_balance", row.load_balance},
            {"active_servers", row.active_servers}, {"resource_waste", row.resource_waste},
            {"feasible", row.feasible},           {"wall_time_ms", row.wall_time_ms}};
        for (const auto& [name, slot] : metrics) {
            item[std::string(name) + "_mean"] = slot[0];
            item[std::string(name) + "_std"] = slot[1];
        }
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

std::string sweep_trace(const SweepResult& r)
{
    std::string out;
    for (const auto& run : r.runs)
        out += run.trace;
    return out;
}

std::string trace_line(const TraceRecord& t,
                       const std::vector<std::pair<std::string, std::string>>& context)
{
    ordered_json doc;
    for (const auto& [key, value] : context) {
        // Numeric context values stay numbers in the output.
        if (!value.empty() && value.find_first_not_of("0123456789") == std::string::npos)
            doc[key] = std::stoull(value);
        else
            doc[key] = value;
    }
    doc["cycle"] = t.cycle;
    doc["best_scalar"] = t.best_scalar;
    doc["archive_size"] = t.archive_size;
    return doc.dump() + "\n";
}

std::string sweep_metadata_json(const SweepConfig& cfg, const SweepResult& r)
{
    ordered_json doc;
    doc["mode"] = r.pop_sweep ? "pop-sweep" : "vm-sweep";
    doc["servers"] = cfg.m;
    doc["servers_note"] = "server count is a harness default, not a measured quantity";
    if (r.pop_sweep) {
        doc["pop_sizes"] = cfg.pop_sizes;
        doc["vms"] = cfg.pop_sweep_n;
    } else {
        doc["vm_counts"] = cfg.vm_counts;
        doc["pop"] = cfg.options.pop;
    }
    doc["cycles"] = cfg.options.cycles;
    doc["reps"] = cfg.reps;
    std::vector<std::string> names;
    for (auto a : cfg.algorithms)
        names.emplace_back(algorithm_name(a));
    doc["algorithms"] = names;
    doc["base_seed"] = cfg.base_seed;
    doc["generator"] = {
        {"cpu_range", {cfg.generator.cpu_range.first, cfg.generator.cpu_range.second}},
        {"mem_range", {cfg.generator.mem_range.first, cfg.generator.mem_range.second}},
        {"demand_floor_ratio", cfg.generator.demand_floor_ratio},
        {"demand_ceiling_ratio", cfg.generator.demand_ceiling_ratio},
        {"alpha", cfg.generator.alpha},
        {"beta", cfg.generator.beta},
    };
    doc["weights"] = {{"w_util", cfg.options.weights.w_util},
                      {"w_lb", cfg.options.weights.w_lb},
                      {"w_active", cfg.options.weights.w_active},
                      {"infeasibility_penalty", cfg.options.weights.infeasibility_penalty}};
    ordered_json failures = ordered_json::array();
    for (const auto& run : r.runs)
        if (!run.error.empty())
            failures.push_back({{"algorithm", run.algorithm},
                                {"n", run.n},
                                {"pop", run.pop},
                                {"rep", run.rep},
                                {"error", run.error}});
    doc["failures"] = failures;
    return doc.dump(2) + "\n";
}

void OracleCheckConfig::validate() const
{
    auto fail = [](const char* what) { throw Error(ErrorCode::invalid_argument, what); };
    if (max_m < 2)
        fail("oracle check needs max_m >= 2");
    if (max_n <= max_m)
        fail("oracle check needs max_n > max_m (instances have more vms than servers)");
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < max_n; ++i) {
        if (space > kBruteForceLimit / max_m)
            throw Error(ErrorCode::instance_too_large,
                        "oracle check bounds exceed the brute-force guard (m^n <= 10^7)");
        space *= max_m;
    }
    if (algorithms.empty())
        fail("oracle check needs at least one algorithm");
    options.weights.validate();
}

double OracleCheckResult::match_fraction(std::size_t algorithm_index) const
{
    if (cases.empty())
        return 1.0;
    return static_cast<double>(matches.at(algorithm_index)) / static_cast<double>(cases.size());
}

OracleCheckResult oracle_check(const OracleCheckConfig& cfg)
{
    cfg.validate();
    OracleCheckResult result;
    result.algorithms = cfg.algorithms;
    result.matches.assign(cfg.algorithms.size(), 0);

    constexpr std::uint64_t kShapeStream = 0x5eed;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        Rng shape(hash64({cfg.seed, i, kShapeStream}));
        GeneratorConfig gen = cfg.generator;
        gen.m = 2 + shape.below(cfg.max_m - 1);
        gen.n = gen.m + 1 + shape.below(cfg.max_n - gen.m);
        gen.seed = hash64({cfg.seed, i, kInstanceStream});
        const PlacementProblem problem = generate_instance(gen);
        const BruteForceResult oracle = brute_force(problem, cfg.options.weights);

        OracleCase c;
        c.n = gen.n;
        c.m = gen.m;
        c.optimum = oracle.scalar;
        RunOptions options = cfg.options;
        options.trace = nullptr;
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
            const auto outcome = run_algorithm(problem, cfg.algorithms[a], options,
                                               hash64({cfg.seed, i, algorithm_id(cfg.algorithms[a])}));
            const double scalar =
                scalarize(evaluate(problem, outcome.placement), cfg.options.weights);
            c.scalars.push_back(scalar);
            c.wall_time_ms.push_back(
                std::chrono::duration<double, std::milli>(outcome.result.wall_time).count());
            if (std::abs(scalar - oracle.scalar) <= kOracleTolerance)
                ++result.matches[a];
        }
        result.cases.push_back(std::move(c));
    }
    return result;
}

std::string oracle_summary_json(const OracleCheckResult& r)
{
    ordered_json doc;
    doc["instances"] = r.cases.size();
    ordered_json algos = ordered_json::array();
    for (std::size_t a = 0; a < r.algorithms.size(); ++a)
        algos.push_back({{"algorithm", algorithm_name(r.algorithms[a])},
                         {"matches", r.matches[a]},
                         {"match_fraction", r.match_fraction(a)}});
    doc["algorithms"] = algos;
    ordered_json cases = ordered_json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"n", c.n}, {"m", c.m}, {"optimum", c.optimum}, {"scalars", c.scalars}});
    doc["cases"] = cases;
    return doc.dump(2) + "\n";
}

}  // namespace vmp
