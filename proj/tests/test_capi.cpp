#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "vmplace/vmplace.h"

namespace {

vmp_problem* split_instance()
{
    const double scpu[] = {10, 10};
    const double smem[] = {10, 10};
    const double vcpu[] = {5, 5, 5, 5};
    const double vmem[] = {5, 5, 5, 5};
    vmp_problem* p = nullptr;
    REQUIRE(vmp_problem_create(scpu, smem, 2, vcpu, vmem, 4, 0.5, 0.5, &p) == VMP_OK);
    return p;
}

}  // namespace

TEST_CASE("version and status names")
{
    CHECK(std::strlen(vmp_version()) > 0);
    CHECK(std::string(vmp_status_name(VMP_ERR_PARSE)) == "parse error");
    CHECK(VMP_ERR_PARSE == 2);
    CHECK(VMP_ERR_UNKNOWN_ALGORITHM == 3);
    CHECK(VMP_ERR_INFEASIBLE == 4);
}

TEST_CASE("problem lifecycle")
{
    vmp_generator_options g;
    vmp_generator_options_init(&g);
    g.servers = 4;
    g.vms = 9;
    g.seed = 5;
    vmp_problem* p = nullptr;
    REQUIRE(vmp_problem_generate(&g, &p) == VMP_OK);
    CHECK(vmp_problem_num_servers(p) == 4);
    CHECK(vmp_problem_num_vms(p) == 9);

    char* json = nullptr;
    REQUIRE(vmp_problem_to_json(p, &json) == VMP_OK);
    vmp_problem* q = nullptr;
    REQUIRE(vmp_problem_from_json(json, &q) == VMP_OK);
    char* again = nullptr;
    REQUIRE(vmp_problem_to_json(q, &again) == VMP_OK);
    CHECK(std::string(json) == again);

    vmp_problem_summary s;
    REQUIRE(vmp_problem_summarize(p, &s) == VMP_OK);
    CHECK(s.demand_cpu / s.capacity_cpu >= 0.9);
    CHECK(s.largest_vm_ratio < 1.0);

    vmp_string_free(json);
    vmp_string_free(again);
    vmp_problem_free(p);
    vmp_problem_free(q);
    vmp_problem_free(nullptr);
}

TEST_CASE("errors carry status codes and messages")
{
    vmp_problem* p = nullptr;
    CHECK(vmp_problem_from_json("{oops", &p) == VMP_ERR_PARSE);
    CHECK(p == nullptr);
    CHECK(std::strlen(vmp_last_error()) > 0);

    vmp_generator_options g;
    vmp_generator_options_init(&g);
    g.servers = 20;
    g.vms = 5;
    CHECK(vmp_problem_generate(&g, &p) == VMP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(vmp_last_error()).find("n > m") != std::string::npos);

    CHECK(vmp_problem_load("/nonexistent/instance.json", &p) == VMP_ERR_IO);
    CHECK(vmp_problem_generate(nullptr, &p) == VMP_ERR_INVALID_ARGUMENT);

    vmp_problem* split = split_instance();
    vmp_solve_options o;
    vmp_solve_options_init(&o);
    vmp_result* r = nullptr;
    CHECK(vmp_solve(split, "annealing", &o, &r) == VMP_ERR_UNKNOWN_ALGORITHM);
    CHECK(r == nullptr);
    vmp_problem_free(split);
}

TEST_CASE("evaluate and placement json")
{
    vmp_problem* p = split_instance();
    const uint32_t assign[] = {1, 2, 1, 2};
    vmp_report rep;
    REQUIRE(vmp_evaluate(p, assign, 4, nullptr, &rep) == VMP_OK);
    CHECK(rep.utilization == 1.0);
    CHECK(rep.load_balance == 0.0);
    CHECK(rep.active_servers == 2);
    CHECK(rep.feasible == 1);

    const uint32_t bad[] = {1, 3, 1, 2};
    CHECK(vmp_evaluate(p, bad, 4, nullptr, &rep) == VMP_ERR_INVALID_ARGUMENT);
    CHECK(vmp_evaluate(p, assign, 3, nullptr, &rep) == VMP_ERR_INVALID_ARGUMENT);

    char* text = nullptr;
    REQUIRE(vmp_placement_to_json(assign, 4, &text) == VMP_OK);
    CHECK(std::string(text) == "{\"assign\":[1,2,1,2]}\n");
    uint32_t back[4] = {};
    REQUIRE(vmp_placement_from_json(p, text, back, 4) == VMP_OK);
    CHECK(std::memcmp(back, assign, sizeof back) == 0);
    CHECK(vmp_placement_from_json(p, "{\"assign\":[1,2]}", back, 4) == VMP_ERR_PARSE);
    vmp_string_free(text);
    vmp_problem_free(p);
}

namespace {

struct TraceCount {
    std::size_t calls = 0;
    double last = 0.0;
};

void count_trace(void* user, size_t, double best, size_t)
{
    auto* t = static_cast<TraceCount*>(user);
    ++t->calls;
    t->last = best;
}

}  // namespace

TEST_CASE("solve through the C interface")
{
    vmp_problem* p = split_instance();
    vmp_solve_options o;
    vmp_solve_options_init(&o);
    o.pop = 20;
    o.cycles = 40;
    o.seed = 2;
    TraceCount trace;
    o.trace = &count_trace;
    o.trace_user = &trace;

    for (const char* alg : {"lamocs", "ga", "pso", "ffd"}) {
        vmp_result* r = nullptr;
        REQUIRE(vmp_solve(p, alg, &o, &r) == VMP_OK);
        vmp_report rep;
        REQUIRE(vmp_result_report(r, &rep) == VMP_OK);
        CHECK(rep.feasible == 1);
        CHECK(rep.load_balance == 0.0);
        CHECK(rep.utilization == 1.0);

        uint32_t assign[4];
        REQUIRE(vmp_result_placement(r, assign, 4) == VMP_OK);
        vmp_report again;
        REQUIRE(vmp_evaluate(p, assign, 4, &o.weights, &again) == VMP_OK);
        CHECK(again.scalar == rep.scalar);

        const size_t len = vmp_result_history(r, nullptr, 0);
        std::vector<double> history(len);
        CHECK(vmp_result_history(r, history.data(), len) == len);
        for (size_t i = 1; i < len; ++i)
            CHECK(history[i] <= history[i - 1]);
        CHECK(vmp_result_archive_size(r) >= 1);

        char* json = nullptr;
        REQUIRE(vmp_result_report_json(r, &json) == VMP_OK);
        CHECK(std::string(json).find(std::string("\"algorithm\":\"") + alg) != std::string::npos);
        vmp_string_free(json);
        char* csv = nullptr;
        REQUIRE(vmp_result_report_csv(r, 1, &csv) == VMP_OK);
        CHECK(std::string(csv).rfind("algorithm,n,m,rep,seed,", 0) == 0);
        vmp_string_free(csv);
        vmp_result_free(r);
    }
    CHECK(trace.calls == 3 * 40);
    vmp_problem_free(p);
}

TEST_CASE("bench through the C interface")
{
    vmp_bench_options b;
    vmp_bench_options_init(&b);
    const size_t counts[] = {8};
    b.vm_counts = counts;
    b.vm_count_len = 1;
    b.servers = 3;
    b.reps = 2;
    b.algorithms = "lamocs,ffd";
    b.solve.pop = 6;
    b.solve.cycles = 5;
    vmp_bench_output out;
    REQUIRE(vmp_bench(&b, &out) == VMP_OK);
    CHECK(out.failures == 0);
    std::string raw(out.raw);
    CHECK(std::count(raw.begin(), raw.end(), '\n') == 1 + 4);
    CHECK(std::string(out.trace).empty());
    vmp_bench_output_free(&out);

    b.format = VMP_FORMAT_JSON;
    b.collect_traces = 1;
    REQUIRE(vmp_bench(&b, &out) == VMP_OK);
    CHECK(out.raw[0] == '[');
    CHECK(std::string(out.trace).find("\"cycle\":5") != std::string::npos);
    vmp_bench_output_free(&out);

    b.algorithms = "lamocs,nope";
    CHECK(vmp_bench(&b, &out) == VMP_ERR_UNKNOWN_ALGORITHM);
}

TEST_CASE("oracle check through the C interface")
{
    vmp_oracle_options o;
    vmp_oracle_options_init(&o);
    CHECK(o.count == 20);
    CHECK(o.solve.pop == 50);
    CHECK(o.solve.cycles == 200);
    o.count = 3;
    o.algorithms = "lamocs,ffd";
    o.solve.pop = 20;
    o.solve.cycles = 30;
    size_t matches[2] = {99, 99};
    char* summary = nullptr;
    REQUIRE(vmp_oracle_check(&o, matches, 2, &summary) == VMP_OK);
    CHECK(matches[0] <= 3);
    CHECK(matches[1] <= 3);
    CHECK(std::string(summary).find("\"instances\": 3") != std::string::npos);
    vmp_string_free(summary);

    o.max_vms = 30;
    CHECK(vmp_oracle_check(&o, nullptr, 0, nullptr) == VMP_ERR_TOO_LARGE);
}
