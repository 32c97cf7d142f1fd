// Command-line front end. Talks to the library only through vmplace.h.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vmplace/vmplace.h"

namespace {

// Exit codes beyond the C status values.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int exit_code;
    std::string message;
};

// Maps a library status to the process exit code.
int exit_code_for(vmp_status status)
{
    switch (status) {
    case VMP_ERR_PARSE: return kExitUsage;
    case VMP_ERR_UNKNOWN_ALGORITHM: return 3;
    case VMP_ERR_INFEASIBLE: return 4;
    default: return kExitFailure;
    }
}

void check(vmp_status status, const std::string& context)
{
    if (status != VMP_OK)
        throw Failure{exit_code_for(status), context + ": " + vmp_last_error()};
}

struct StringDeleter {
    void operator()(char* s) const { vmp_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ProblemDeleter {
    void operator()(vmp_problem* p) const { vmp_problem_free(p); }
};
using Problem = std::unique_ptr<vmp_problem, ProblemDeleter>;

struct ResultDeleter {
    void operator()(vmp_result* r) const { vmp_result_free(r); }
};
using Result = std::unique_ptr<vmp_result, ResultDeleter>;

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out)
        throw Failure{kExitFailure, "cannot write " + path};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure{kExitFailure, "cannot open " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Problem load_problem(const std::string& path)
{
    vmp_problem* raw = nullptr;
    check(vmp_problem_from_json(read_file(path).c_str(), &raw), path);
    return Problem(raw);
}

std::string join(const std::vector<std::string>& names)
{
    std::string out;
    for (const auto& name : names)
        out += (out.empty() ? "" : ",") + name;
    return out;
}

// ---- shared option groups ---------------------------------------------------

void add_generator_options(CLI::App& cmd, vmp_generator_options& g)
{
    cmd.add_option("--cpu-min", g.cpu_min, "Smallest server cpu capacity")->capture_default_str();
    cmd.add_option("--cpu-max", g.cpu_max, "Largest server cpu capacity")->capture_default_str();
    cmd.add_option("--mem-min", g.mem_min, "Smallest server memory capacity")->capture_default_str();
    cmd.add_option("--mem-max", g.mem_max, "Largest server memory capacity")->capture_default_str();
    cmd.add_option("--demand-floor", g.demand_floor_ratio,
                   "Minimum total demand as a fraction of total capacity")
        ->capture_default_str();
    cmd.add_option("--demand-ceiling", g.demand_ceiling_ratio,
                   "Maximum total demand as a fraction of total capacity")
        ->capture_default_str();
    cmd.add_option("--alpha", g.alpha, "Cpu weight of the combined size")->capture_default_str();
    cmd.add_option("--beta", g.beta, "Memory weight of the combined size")->capture_default_str();
}

void add_solver_options(CLI::App& cmd, vmp_solve_options& o)
{
    cmd.add_option("--pop", o.pop, "Population size")->capture_default_str();
    cmd.add_option("--cycles", o.cycles, "Cycle / generation / iteration budget")
        ->capture_default_str();
    cmd.add_option("--w-util", o.weights.utilization, "Utilization weight")->capture_default_str();
    cmd.add_option("--w-lb", o.weights.load_balance, "Load balance weight")->capture_default_str();
    cmd.add_option("--w-active", o.weights.active, "Active server weight")->capture_default_str();
    cmd.add_option("--infeasible-penalty", o.weights.infeasibility_penalty,
                   "Flat penalty added to infeasible placements")
        ->capture_default_str();
    cmd.add_option("--pa", o.p_a, "Fraction of nests abandoned per cycle")->capture_default_str();
    cmd.add_option("--reward", o.reward_a, "Automaton reward factor")->capture_default_str();
    cmd.add_option("--penalty", o.penalty_b, "Automaton penalty factor")->capture_default_str();
    cmd.add_option("--la-fraction", o.la_fraction,
                   "Share of new nests sampled from the automata")
        ->capture_default_str();
    static const std::map<std::string, vmp_la_scope> scopes{
        {"regenerated", VMP_LA_REGENERATED},
        {"initial", VMP_LA_INITIAL_POPULATION},
        {"both", VMP_LA_BOTH}};
    cmd.add_option("--la-scope", o.la_scope, "Where automata sample nests")
        ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case))
        ->default_str("both");
    cmd.add_option("--crossover", o.crossover_rate, "GA crossover rate")->capture_default_str();
    cmd.add_option("--mutation", o.mutation_rate, "GA per-gene mutation rate")->capture_default_str();
    cmd.add_option("--inertia", o.inertia, "PSO inertia")->capture_default_str();
    cmd.add_option("--c1", o.c1, "PSO cognitive coefficient")->capture_default_str();
    cmd.add_option("--c2", o.c2, "PSO social coefficient")->capture_default_str();
}

// ---- generate ----------------------------------------------------------------

struct GenerateArgs {
    vmp_generator_options gen{};
    std::string out;
};

int run_generate(const GenerateArgs& args)
{
    vmp_problem* raw = nullptr;
    check(vmp_problem_generate(&args.gen, &raw), "generate");
    Problem problem(raw);
    check(vmp_problem_save(problem.get(), args.out.c_str()), "save");

    // Reload what was written so the summary reflects the file itself.
    const Problem reloaded = load_problem(args.out);
    vmp_problem_summary s{};
    check(vmp_problem_summarize(reloaded.get(), &s), "summary");
    std::printf("wrote %s: %zu servers, %zu vms\n", args.out.c_str(),
                vmp_problem_num_servers(reloaded.get()), vmp_problem_num_vms(reloaded.get()));
    std::printf("demand/capacity: cpu %.4f, mem %.4f\n", s.demand_cpu / s.capacity_cpu,
                s.demand_mem / s.capacity_mem);
    std::printf("largest vm / mean server capacity: %.4f\n", s.largest_vm_ratio);
    std::printf("instance invariants: ok\n");
    return 0;
}

// ---- solve -------------------------------------------------------------------

struct SolveArgs {
    std::string instance;
    std::string algorithm = "lamocs";
    std::string out = "placement.json";
    std::string format = "json";
    std::string trace;
    vmp_solve_options opt{};
};

struct TraceFile {
    std::FILE* file = nullptr;
};

void trace_to_file(void* user, size_t cycle, double best_scalar, size_t archive_size)
{
    auto* sink = static_cast<TraceFile*>(user);
    char scalar[32];
    const auto end = std::to_chars(scalar, scalar + sizeof scalar, best_scalar).ptr;
    std::fprintf(sink->file, "{\"cycle\":%zu,\"best_scalar\":%.*s,\"archive_size\":%zu}\n", cycle,
                 static_cast<int>(end - scalar), scalar, archive_size);
}

int run_solve(SolveArgs args)
{
    const Problem problem = load_problem(args.instance);

    TraceFile sink;
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> owned(nullptr, &std::fclose);
    if (!args.trace.empty()) {
        if (args.trace == "-") {
            sink.file = stderr;
        } else {
            owned.reset(std::fopen(args.trace.c_str(), "wb"));
            if (!owned)
                throw Failure{kExitFailure, "cannot write " + args.trace};
            sink.file = owned.get();
        }
        args.opt.trace = &trace_to_file;
        args.opt.trace_user = &sink;
    }

    vmp_result* raw = nullptr;
    check(vmp_solve(problem.get(), args.algorithm.c_str(), &args.opt, &raw), "solve");
    const Result result(raw);

    char* text = nullptr;
    check(vmp_result_placement_json(result.get(), &text), "placement");
    const CString placement(text);
    write_file(args.out, placement.get());

    if (args.format == "csv")
        check(vmp_result_report_csv(result.get(), 1, &text), "report");
    else
        check(vmp_result_report_json(result.get(), &text), "report");
    const CString report(text);
    std::fputs(report.get(), stdout);

    vmp_report summary{};
    check(vmp_result_report(result.get(), &summary), "report");
    if (!summary.feasible) {
        std::fprintf(stderr, "no feasible placement found\n");
        return exit_code_for(VMP_ERR_INFEASIBLE);
    }
    return 0;
}

// ---- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
    std::string instance;
    std::string placement;
    std::string format = "json";
    vmp_weights weights{};
};

int run_evaluate(const EvaluateArgs& args)
{
    const Problem problem = load_problem(args.instance);
    std::vector<uint32_t> assign(vmp_problem_num_vms(problem.get()));
    check(vmp_placement_from_json(problem.get(), read_file(args.placement).c_str(), assign.data(),
                                  assign.size()),
          args.placement);
    vmp_report r{};
    check(vmp_evaluate(problem.get(), assign.data(), assign.size(), &args.weights, &r),
          "evaluate");
    if (args.format == "csv") {
        std::printf("utilization,load_balance,active_servers,resource_waste,feasible,scalar\n");
        std::printf("%.17g,%.17g,%zu,%.17g,%s,%.17g\n", r.utilization, r.load_balance,
                    r.active_servers, r.resource_waste, r.feasible ? "true" : "false", r.scalar);
    } else {
        std::printf("{\"utilization\":%.17g,\"load_balance\":%.17g,\"active_servers\":%zu,"
                    "\"resource_waste\":%.17g,\"feasible\":%s,\"scalar\":%.17g}\n",
                    r.utilization, r.load_balance, r.active_servers, r.resource_waste,
                    r.feasible ? "true" : "false", r.scalar);
    }
    return r.feasible ? 0 : exit_code_for(VMP_ERR_INFEASIBLE);
}

// ---- bench -------------------------------------------------------------------

struct BenchArgs {
    vmp_bench_options opt{};
    std::vector<size_t> vm_counts{20, 40, 60, 80, 100};
    std::vector<std::string> algorithms{"lamocs", "ga", "pso"};
    bool pop_sweep = false;
    std::vector<size_t> pop_sizes{20, 40, 60, 80, 100};
    std::string out_dir = ".";
    std::string format = "csv";
    std::string trace;
};

int run_bench(BenchArgs args)
{
    const std::string algorithms = join(args.algorithms);
    args.opt.vm_counts = args.vm_counts.data();
    args.opt.vm_count_len = args.vm_counts.size();
    args.opt.algorithms = algorithms.c_str();
    if (args.pop_sweep) {
        args.opt.pop_sizes = args.pop_sizes.data();
        args.opt.pop_size_len = args.pop_sizes.size();
    }
    args.opt.format = args.format == "json" ? VMP_FORMAT_JSON : VMP_FORMAT_CSV;
    args.opt.collect_traces = args.trace.empty() ? 0 : 1;

    vmp_bench_output out{};
    check(vmp_bench(&args.opt, &out), "bench");
    std::unique_ptr<vmp_bench_output, void (*)(vmp_bench_output*)> guard(&out,
                                                                          &vmp_bench_output_free);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    const std::string ext = args.format == "json" ? ".json" : ".csv";
    const fs::path dir(args.out_dir);
    write_file((dir / ("raw" + ext)).string(), out.raw);
    write_file((dir / ("aggregate" + ext)).string(), out.aggregate);
    write_file((dir / "metadata.json").string(), out.metadata);
    if (!args.trace.empty())
        write_file(args.trace, out.trace);

    std::fputs(out.aggregate, stdout);
    if (out.failures > 0)
        std::fprintf(stderr, "%zu run(s) failed; see metadata.json\n", out.failures);
    return 0;
}

// ---- oracle-check ------------------------------------------------------------

struct OracleArgs {
    vmp_oracle_options opt{};
    std::vector<std::string> algorithms{"lamocs"};
    double min_fraction = 0.0;
    std::string out;
};

int run_oracle(OracleArgs args)
{
    const std::string algorithms = join(args.algorithms);
    args.opt.algorithms = algorithms.c_str();
    std::vector<size_t> matches(args.algorithms.size());
    char* text = nullptr;
    check(vmp_oracle_check(&args.opt, matches.data(), matches.size(), &text), "oracle-check");
    const CString summary(text);
    if (!args.out.empty())
        write_file(args.out, summary.get());

    bool pass = true;
    for (std::size_t a = 0; a < matches.size(); ++a) {
        const double fraction = args.opt.count == 0
                                    ? 1.0
                                    : static_cast<double>(matches[a]) /
                                          static_cast<double>(args.opt.count);
        const bool ok = fraction >= args.min_fraction;
        pass = pass && ok;
        std::printf("%s: %zu/%zu match the brute-force optimum (%.3f) %s\n",
                    args.algorithms[a].c_str(), matches[a], args.opt.count, fraction,
                    ok ? "PASS" : "FAIL");
    }
    return pass ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Virtual machine placement: cuckoo search with learning automata and baselines"};
    app.set_version_flag("--version", std::string(vmp_version()));
    app.require_subcommand(1);
    const auto format_check = CLI::IsMember({"json", "csv"});

    GenerateArgs gen;
    vmp_generator_options_init(&gen.gen);
    auto* generate = app.add_subcommand("generate", "Generate a random instance");
    generate->add_option("--servers", gen.gen.servers, "Number of servers")->capture_default_str();
    generate->add_option("--vms", gen.gen.vms, "Number of vms")->capture_default_str();
    generate->add_option("--seed", gen.gen.seed, "Generator seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Instance file to write")->required();
    add_generator_options(*generate, gen.gen);

    SolveArgs solve;
    vmp_solve_options_init(&solve.opt);
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--instance", solve.instance, "Instance JSON file")->required();
    solve_cmd->add_option("--algorithm,-a", solve.algorithm, "lamocs | ga | pso | ffd")
        ->capture_default_str();
    solve_cmd->add_option("--seed", solve.opt.seed, "Solver seed")->capture_default_str();
    solve_cmd->add_option("--out", solve.out, "Placement file to write")->capture_default_str();
    solve_cmd->add_option("--format", solve.format, "Report format")
        ->check(format_check)
        ->capture_default_str();
    solve_cmd->add_option("--trace", solve.trace, "Per-cycle JSON lines to this file ('-' = stderr)");
    add_solver_options(*solve_cmd, solve.opt);

    EvaluateArgs eval;
    vmp_weights_init(&eval.weights);
    auto* evaluate = app.add_subcommand("evaluate", "Recompute the metrics of a placement file");
    evaluate->add_option("--instance", eval.instance, "Instance JSON file")->required();
    evaluate->add_option("--placement", eval.placement, "Placement JSON file")->required();
    evaluate->add_option("--format", eval.format, "Report format")
        ->check(format_check)
        ->capture_default_str();
    evaluate->add_option("--w-util", eval.weights.utilization, "Utilization weight");
    evaluate->add_option("--w-lb", eval.weights.load_balance, "Load balance weight");
    evaluate->add_option("--w-active", eval.weights.active, "Active server weight");
    evaluate->add_option("--infeasible-penalty", eval.weights.infeasibility_penalty,
                         "Flat penalty added to infeasible placements");

    BenchArgs bench;
    vmp_bench_options_init(&bench.opt);
    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark sweep");
    bench_cmd->add_option("--vm-counts", bench.vm_counts, "VM counts to sweep")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--servers", bench.opt.servers, "Servers per instance")
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench.opt.reps, "Repetitions per cell")->capture_default_str();
    bench_cmd->add_option("--algorithms", bench.algorithms, "Algorithms to run")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.opt.base_seed, "Base seed")->capture_default_str();
    bench_cmd->add_flag("--pop-sweep", bench.pop_sweep,
                        "Vary the population size at a fixed vm count instead");
    bench_cmd->add_option("--pop-sizes", bench.pop_sizes, "Population sizes for --pop-sweep")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--pop-sweep-vms", bench.opt.pop_sweep_vms, "VM count for --pop-sweep")
        ->capture_default_str();
    bench_cmd->add_option("--threads", bench.opt.threads, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--out-dir", bench.out_dir, "Directory for the report files")
        ->capture_default_str();
    bench_cmd->add_option("--format", bench.format, "Report format")
        ->check(format_check)
        ->capture_default_str();
    bench_cmd->add_option("--trace", bench.trace, "Per-cycle JSON lines of every run to this file");
    add_solver_options(*bench_cmd, bench.opt.solve);
    add_generator_options(*bench_cmd, bench.opt.generator);

    OracleArgs oracle;
    vmp_oracle_options_init(&oracle.opt);
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "Compare solvers with brute force on tiny instances");
    oracle_cmd->add_option("--count", oracle.opt.count, "Number of instances")->capture_default_str();
    oracle_cmd->add_option("--max-vms", oracle.opt.max_vms, "Largest vm count")->capture_default_str();
    oracle_cmd->add_option("--max-servers", oracle.opt.max_servers, "Largest server count")
        ->capture_default_str();
    oracle_cmd->add_option("--algorithms", oracle.algorithms, "Algorithms to check")
        ->delimiter(',')
        ->capture_default_str();
    oracle_cmd->add_option("--seed", oracle.opt.seed, "Seed")->capture_default_str();
    oracle_cmd->add_option("--min-fraction", oracle.min_fraction,
                           "Exit nonzero when a match fraction is below this")
        ->capture_default_str();
    oracle_cmd->add_option("--out", oracle.out, "Write the JSON summary here");
    add_solver_options(*oracle_cmd, oracle.opt.solve);
    add_generator_options(*oracle_cmd, oracle.opt.generator);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate)
            return run_generate(gen);
        if (*solve_cmd)
            return run_solve(solve);
        if (*evaluate)
            return run_evaluate(eval);
        if (*bench_cmd)
            return run_bench(bench);
        if (*oracle_cmd)
            return run_oracle(oracle);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.exit_code;
    }
    return kExitFailure;
}
