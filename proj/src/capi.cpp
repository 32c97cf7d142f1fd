#include "vmplace/vmplace.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "vmplace/bench.hpp"
#include "vmplace/error.hpp"
#include "vmplace/json_io.hpp"

struct vmp_problem {
    vmp::PlacementProblem problem;
};

struct vmp_result {
    std::string algorithm;
    vmp::RunReport report;
    vmp::Placement placement;
    std::vector<double> history;
    std::size_t archive_size = 0;
};

namespace {

thread_local std::string last_error;

vmp_status fail(vmp_status status, const std::string& message)
{
    last_error = message;
    return status;
}

vmp_status status_of(vmp::ErrorCode code)
{
    switch (code) {
    case vmp::ErrorCode::invalid_argument: return VMP_ERR_INVALID_ARGUMENT;
    case vmp::ErrorCode::parse: return VMP_ERR_PARSE;
    case vmp::ErrorCode::unknown_algorithm: return VMP_ERR_UNKNOWN_ALGORITHM;
    case vmp::ErrorCode::generator_infeasible: return VMP_ERR_GENERATOR;
    case vmp::ErrorCode::instance_too_large: return VMP_ERR_TOO_LARGE;
    case vmp::ErrorCode::io: return VMP_ERR_IO;
    }
    return VMP_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
vmp_status guarded(F&& body)
{
    try {
        body();
        return VMP_OK;
    } catch (const vmp::Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(VMP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VMP_ERR_INTERNAL, e.what());
    }
}

char* duplicate(const std::string& s)
{
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool condition, const char* what)
{
    if (!condition)
        throw vmp::Error(vmp::ErrorCode::invalid_argument, what);
}

vmp::GeneratorConfig to_generator(const vmp_generator_options& g)
{
    vmp::GeneratorConfig cfg;
    cfg.m = g.servers;
    cfg.n = g.vms;
    cfg.cpu_range = {g.cpu_min, g.cpu_max};
    cfg.mem_range = {g.mem_min, g.mem_max};
    cfg.demand_floor_ratio = g.demand_floor_ratio;
    cfg.demand_ceiling_ratio = g.demand_ceiling_ratio;
    cfg.alpha = g.alpha;
    cfg.beta = g.beta;
    cfg.seed = g.seed;
    return cfg;
}

vmp::ScalarWeights to_weights(const vmp_weights& w)
{
    vmp::ScalarWeights out;
    out.w_util = w.utilization;
    out.w_lb = w.load_balance;
    out.w_active = w.active;
    out.infeasibility_penalty = w.infeasibility_penalty;
    return out;
}

vmp::RunOptions to_run_options(const vmp_solve_options& o)
{
    vmp::RunOptions out;
    out.pop = o.pop;
    out.cycles = o.cycles;
    out.weights = to_weights(o.weights);
    out.p_a = o.p_a;
    out.reward_a = o.reward_a;
    out.penalty_b = o.penalty_b;
    out.la_fraction = o.la_fraction;
    switch (o.la_scope) {
    case VMP_LA_REGENERATED: out.la_scope = vmp::LaScope::regenerated; break;
    case VMP_LA_INITIAL_POPULATION: out.la_scope = vmp::LaScope::initial_population; break;
    case VMP_LA_BOTH: out.la_scope = vmp::LaScope::both; break;
    default: require(false, "unknown learning automata scope");
    }
    out.crossover_rate = o.crossover_rate;
    out.mutation_rate = o.mutation_rate;
    out.inertia = o.inertia;
    out.c1 = o.c1;
    out.c2 = o.c2;
    return out;
}

std::vector<vmp::Algorithm> parse_algorithm_list(const char* list)
{
    std::vector<vmp::Algorithm> out;
    std::string text(list);
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string name = text.substr(start, comma - start);
        out.push_back(vmp::parse_algorithm(name));
        start = comma + 1;
    }
    return out;
}

vmp::Placement to_placement(const vmp::PlacementProblem& p, const uint32_t* assign,
                            std::size_t count)
{
    require(assign != nullptr || count == 0, "assignment pointer is null");
    require(count == p.num_vms(), "assignment length differs from the vm count");
    vmp::Placement s;
    s.assign.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        require(assign[i] >= 1 && assign[i] <= p.num_servers(), "server index out of range");
        s.assign.push_back(assign[i] - 1);
    }
    return s;
}

void fill_report(const vmp::RunReport& r, vmp_report* out)
{
    out->utilization = r.utilization;
    out->load_balance = r.load_balance;
    out->active_servers = r.active_servers;
    out->resource_waste = r.resource_waste;
    out->feasible = r.feasible ? 1 : 0;
    out->scalar = r.scalar;
    out->wall_time_ms = r.wall_time_ms;
    out->cycles = r.cycles;
}

}  // namespace

extern "C" {

const char* vmp_version(void)
{
    return VMPLACE_VERSION;
}

const char* vmp_last_error(void)
{
    return last_error.c_str();
}

const char* vmp_status_name(vmp_status status)
{
    switch (status) {
    case VMP_OK: return "ok";
    case VMP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VMP_ERR_PARSE: return "parse error";
    case VMP_ERR_UNKNOWN_ALGORITHM: return "unknown algorithm";
    case VMP_ERR_INFEASIBLE: return "infeasible";
    case VMP_ERR_GENERATOR: return "generator failure";
    case VMP_ERR_TOO_LARGE: return "instance too large";
    case VMP_ERR_IO: return "i/o error";
    case VMP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void vmp_string_free(char* s)
{
    std::free(s);
}

void vmp_generator_options_init(vmp_generator_options* opt)
{
    if (!opt)
        return;
    const vmp::GeneratorConfig d;
    *opt = {d.m,
            d.n,
            d.cpu_range.first,
            d.cpu_range.second,
            d.mem_range.first,
            d.mem_range.second,
            d.demand_floor_ratio,
            d.demand_ceiling_ratio,
            d.alpha,
            d.beta,
            d.seed};
}

vmp_status vmp_problem_generate(const vmp_generator_options* opt, vmp_problem** out)
{
    return guarded([&] {
        require(opt && out, "null argument");
        *out = new vmp_problem{vmp::generate_instance(to_generator(*opt))};
    });
}

vmp_status vmp_problem_create(const double* server_cpu, const double* server_mem,
                              size_t servers, const double* vm_cpu, const double* vm_mem,
                              size_t vms, double alpha, double beta, vmp_problem** out)
{
    return guarded([&] {
        require(out != nullptr, "null output");
        require((server_cpu && server_mem) || servers == 0, "null server arrays");
        require((vm_cpu && vm_mem) || vms == 0, "null vm arrays");
        std::vector<vmp::ResourceVector> s(servers);
        for (std::size_t j = 0; j < servers; ++j)
            s[j] = {server_cpu[j], server_mem[j]};
        std::vector<vmp::ResourceVector> v(vms);
        for (std::size_t i = 0; i < vms; ++i)
            v[i] = {vm_cpu[i], vm_mem[i]};
        *out = new vmp_problem{vmp::PlacementProblem(std::move(s), std::move(v), alpha, beta)};
    });
}

vmp_status vmp_problem_from_json(const char* text, vmp_problem** out)
{
    return guarded([&] {
        require(text && out, "null argument");
        *out = new vmp_problem{vmp::problem_from_json(text)};
    });
}

vmp_status vmp_problem_load(const char* path, vmp_problem** out)
{
    return guarded([&] {
        require(path && out, "null argument");
        *out = new vmp_problem{vmp::problem_from_json(vmp::read_text_file(path))};
    });
}

vmp_status vmp_problem_to_json(const vmp_problem* p, char** out)
{
    return guarded([&] {
        require(p && out, "null argument");
        *out = duplicate(vmp::problem_to_json(p->problem));
    });
}

vmp_status vmp_problem_save(const vmp_problem* p, const char* path)
{
    return guarded([&] {
        require(p && path, "null argument");
        vmp::write_text_file(path, vmp::problem_to_json(p->problem));
    });
}

size_t vmp_problem_num_servers(const vmp_problem* p)
{
    return p ? p->problem.num_servers() : 0;
}

size_t vmp_problem_num_vms(const vmp_problem* p)
{
    return p ? p->problem.num_vms() : 0;
}

void vmp_problem_free(vmp_problem* p)
{
    delete p;
}

vmp_status vmp_problem_summarize(const vmp_problem* p, vmp_problem_summary* out)
{
    return guarded([&] {
        require(p && out, "null argument");
        const auto cap = vmp::total_capacity(p->problem);
        const auto dem = vmp::total_demand(p->problem);
        const auto mean = p->problem.mean_capacity();
        double largest = 0.0;
        for (const auto& v : p->problem.vms())
            largest = std::max({largest, v.cpu / mean.cpu, v.mem / mean.mem});
        *out = {cap.cpu, cap.mem, dem.cpu, dem.mem, largest};
    });
}

void vmp_weights_init(vmp_weights* w)
{
    if (!w)
        return;
    const vmp::ScalarWeights d;
    *w = {d.w_util, d.w_lb, d.w_active, d.infeasibility_penalty};
}

vmp_status vmp_evaluate(const vmp_problem* p, const uint32_t* assign, size_t count,
                        const vmp_weights* weights, vmp_report* out)
{
    return guarded([&] {
        require(p && out, "null argument");
        vmp::ScalarWeights w;
        if (weights)
            w = to_weights(*weights);
        w.validate();
        const auto s = to_placement(p->problem, assign, count);
        fill_report(vmp::make_report(p->problem, s, w), out);
    });
}

vmp_status vmp_placement_from_json(const vmp_problem* p, const char* text, uint32_t* assign,
                                   size_t count)
{
    return guarded([&] {
        require(p && text, "null argument");
        const auto s = vmp::placement_from_json(text, p->problem);
        require(assign != nullptr && count >= s.size(), "output buffer too small");
        for (std::size_t i = 0; i < s.size(); ++i)
            assign[i] = s[i] + 1;
    });
}

vmp_status vmp_placement_to_json(const uint32_t* assign, size_t count, char** out)
{
    return guarded([&] {
        require(out != nullptr, "null output");
        require(assign != nullptr || count == 0, "assignment pointer is null");
        vmp::Placement s;
        for (std::size_t i = 0; i < count; ++i) {
            require(assign[i] >= 1, "server indices are one-based");
            s.assign.push_back(assign[i] - 1);
        }
        *out = duplicate(vmp::placement_to_json(s));
    });
}

void vmp_solve_options_init(vmp_solve_options* opt)
{
    if (!opt)
        return;
    const vmp::RunOptions d;
    *opt = vmp_solve_options{};
    opt->pop = d.pop;
    opt->cycles = d.cycles;
    vmp_weights_init(&opt->weights);
    opt->p_a = d.p_a;
    opt->reward_a = d.reward_a;
    opt->penalty_b = d.penalty_b;
    opt->la_fraction = d.la_fraction;
    opt->la_scope = VMP_LA_BOTH;
    opt->crossover_rate = d.crossover_rate;
    opt->mutation_rate = d.mutation_rate;
    opt->inertia = d.inertia;
    opt->c1 = d.c1;
    opt->c2 = d.c2;
    opt->seed = 0;
    opt->trace = nullptr;
    opt->trace_user = nullptr;
}

vmp_status vmp_solve(const vmp_problem* p, const char* algorithm, const vmp_solve_options* opt,
                     vmp_result** out)
{
    return guarded([&] {
        require(p && algorithm && opt && out, "null argument");
        const vmp::Algorithm alg = vmp::parse_algorithm(algorithm);
        vmp::RunOptions options = to_run_options(*opt);
        if (opt->trace) {
            options.trace = [fn = opt->trace, user = opt->trace_user](const vmp::TraceRecord& t) {
                fn(user, t.cycle, t.best_scalar, t.archive_size);
            };
        }
        const auto outcome = vmp::run_algorithm(p->problem, alg, options, opt->seed);

        auto result = std::make_unique<vmp_result>();
        result->algorithm = std::string(vmp::algorithm_name(alg));
        result->report = vmp::make_report(p->problem, outcome.placement, options.weights);
        result->report.algorithm = result->algorithm;
        result->report.seed = opt->seed;
        result->report.pop = alg == vmp::Algorithm::ffd ? 0 : options.pop;
        result->report.cycles = outcome.result.cycles_run;
        result->report.wall_time_ms =
            std::chrono::duration<double, std::milli>(outcome.result.wall_time).count();
        result->placement = outcome.placement;
        result->history = outcome.result.history;
        result->archive_size = outcome.result.archive.size();
        *out = result.release();
    });
}

vmp_status vmp_result_report(const vmp_result* r, vmp_report* out)
{
    return guarded([&] {
        require(r && out, "null argument");
        fill_report(r->report, out);
    });
}

vmp_status vmp_result_placement(const vmp_result* r, uint32_t* assign, size_t count)
{
    return guarded([&] {
        require(r != nullptr, "null result");
        require(assign != nullptr && count >= r->placement.size(), "output buffer too small");
        for (std::size_t i = 0; i < r->placement.size(); ++i)
            assign[i] = r->placement[i] + 1;
    });
}

vmp_status vmp_result_placement_json(const vmp_result* r, char** out)
{
    return guarded([&] {
        require(r && out, "null argument");
        *out = duplicate(vmp::placement_to_json(r->placement));
    });
}

vmp_status vmp_result_report_json(const vmp_result* r, char** out)
{
    return guarded([&] {
        require(r && out, "null argument");
        *out = duplicate(vmp::report_to_json(r->report));
    });
}

vmp_status vmp_result_report_csv(const vmp_result* r, int with_header, char** out)
{
    return guarded([&] {
        require(r && out, "null argument");
        *out = duplicate(vmp::report_to_csv(r->report, with_header != 0));
    });
}

size_t vmp_result_history(const vmp_result* r, double* out, size_t capacity)
{
    if (!r)
        return 0;
    const std::size_t copy = out ? std::min(capacity, r->history.size()) : 0;
    std::copy_n(r->history.begin(), copy, out);
    return r->history.size();
}

size_t vmp_result_archive_size(const vmp_result* r)
{
    return r ? r->archive_size : 0;
}

void vmp_result_free(vmp_result* r)
{
    delete r;
}

void vmp_bench_options_init(vmp_bench_options* opt)
{
    if (!opt)
        return;
    const vmp::SweepConfig d;
    *opt = vmp_bench_options{};
    opt->vm_counts = nullptr;
    opt->vm_count_len = 0;
    opt->servers = d.m;
    opt->reps = d.reps;
    opt->algorithms = nullptr;
    opt->base_seed = d.base_seed;
    vmp_generator_options_init(&opt->generator);
    vmp_solve_options_init(&opt->solve);
    opt->pop_sizes = nullptr;
    opt->pop_size_len = 0;
    opt->pop_sweep_vms = d.pop_sweep_n;
    opt->threads = d.threads;
    opt->collect_traces = 0;
    opt->format = VMP_FORMAT_CSV;
}

vmp_status vmp_bench(const vmp_bench_options* opt, vmp_bench_output* out)
{
    return guarded([&] {
        require(opt && out, "null argument");
        *out = vmp_bench_output{};
        vmp::SweepConfig cfg;
        if (opt->vm_counts)
            cfg.vm_counts.assign(opt->vm_counts, opt->vm_counts + opt->vm_count_len);
        cfg.m = opt->servers;
        cfg.reps = opt->reps;
        if (opt->algorithms)
            cfg.algorithms = parse_algorithm_list(opt->algorithms);
        cfg.base_seed = opt->base_seed;
        cfg.generator = to_generator(opt->generator);
        cfg.options = to_run_options(opt->solve);
        if (opt->pop_sizes)
            cfg.pop_sizes.assign(opt->pop_sizes, opt->pop_sizes + opt->pop_size_len);
        cfg.pop_sweep_n = opt->pop_sweep_vms;
        cfg.threads = opt->threads;
        cfg.collect_traces = opt->collect_traces != 0;

        const vmp::SweepResult result = vmp::run_sweep(cfg);
        const bool json = opt->format == VMP_FORMAT_JSON;
        vmp_bench_output filled{};
        try {
            filled.raw = duplicate(json ? vmp::raw_json(result) : vmp::raw_csv(result));
            filled.aggregate =
                duplicate(json ? vmp::aggregate_json(result) : vmp::aggregate_csv(result));
            filled.metadata = duplicate(vmp::sweep_metadata_json(cfg, result));
            filled.trace = duplicate(vmp::sweep_trace(result));
        } catch (...) {
            vmp_bench_output_free(&filled);
            throw;
        }
        for (const auto& run : result.runs)
            filled.failures += run.error.empty() ? 0 : 1;
        *out = filled;
    });
}

void vmp_bench_output_free(vmp_bench_output* out)
{
    if (!out)
        return;
    std::free(out->raw);
    std::free(out->aggregate);
    std::free(out->metadata);
    std::free(out->trace);
    *out = vmp_bench_output{};
}

void vmp_oracle_options_init(vmp_oracle_options* opt)
{
    if (!opt)
        return;
    const vmp::OracleCheckConfig d;
    *opt = vmp_oracle_options{};
    opt->count = d.count;
    opt->max_vms = d.max_n;
    opt->max_servers = d.max_m;
    opt->algorithms = nullptr;
    opt->seed = d.seed;
    vmp_generator_options_init(&opt->generator);
    vmp_solve_options_init(&opt->solve);
    opt->solve.pop = d.options.pop;
    opt->solve.cycles = d.options.cycles;
}

vmp_status vmp_oracle_check(const vmp_oracle_options* opt, size_t* matches, size_t matches_len,
                            char** summary)
{
    return guarded([&] {
        require(opt != nullptr, "null options");
        vmp::OracleCheckConfig cfg;
        cfg.count = opt->count;
        cfg.max_n = opt->max_vms;
        cfg.max_m = opt->max_servers;
        if (opt->algorithms)
            cfg.algorithms = parse_algorithm_list(opt->algorithms);
        cfg.seed = opt->seed;
        cfg.generator = to_generator(opt->generator);
        cfg.options = to_run_options(opt->solve);

        const auto result = vmp::oracle_check(cfg);
        if (matches)
            for (std::size_t a = 0; a < std::min(matches_len, result.matches.size()); ++a)
                matches[a] = result.matches[a];
        if (summary)
            *summary = duplicate(vmp::oracle_summary_json(result));
    });
}

}  // extern "C"
