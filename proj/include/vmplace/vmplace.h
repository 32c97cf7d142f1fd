/* C interface to the vmplace library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a vmp_status; on
 * failure vmp_last_error() describes the problem (per thread, valid until
 * the next failing call on that thread). Strings returned through char**
 * are released with vmp_string_free.
 *
 * Server indices crossing this interface are one-based.
 */
#ifndef VMPLACE_H
#define VMPLACE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VMP_BUILDING_LIBRARY)
#    define VMP_API __declspec(dllexport)
#  else
#    define VMP_API __declspec(dllimport)
#  endif
#else
#  define VMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vmp_status {
    VMP_OK = 0,
    VMP_ERR_INVALID_ARGUMENT = 1,
    VMP_ERR_PARSE = 2,
    VMP_ERR_UNKNOWN_ALGORITHM = 3,
    VMP_ERR_INFEASIBLE = 4,
    VMP_ERR_GENERATOR = 5,
    VMP_ERR_TOO_LARGE = 6,
    VMP_ERR_IO = 7,
    VMP_ERR_INTERNAL = 8
} vmp_status;

typedef struct vmp_problem vmp_problem;
typedef struct vmp_result vmp_result;

VMP_API const char* vmp_version(void);
VMP_API const char* vmp_last_error(void);
VMP_API const char* vmp_status_name(vmp_status status);
VMP_API void vmp_string_free(char* s);

/* ---- instances ---------------------------------------------------------- */

typedef struct vmp_generator_options {
    size_t servers;
    size_t vms;
    double cpu_min, cpu_max;
    double mem_min, mem_max;
    double demand_floor_ratio;
    double demand_ceiling_ratio;
    double alpha, beta;
    uint64_t seed;
} vmp_generator_options;

VMP_API void vmp_generator_options_init(vmp_generator_options* opt);
VMP_API vmp_status vmp_problem_generate(const vmp_generator_options* opt, vmp_problem** out);
VMP_API vmp_status vmp_problem_create(const double* server_cpu, const double* server_mem,
                                      size_t servers, const double* vm_cpu,
                                      const double* vm_mem, size_t vms, double alpha,
                                      double beta, vmp_problem** out);
VMP_API vmp_status vmp_problem_from_json(const char* text, vmp_problem** out);
VMP_API vmp_status vmp_problem_load(const char* path, vmp_problem** out);
VMP_API vmp_status vmp_problem_to_json(const vmp_problem* p, char** out);
VMP_API vmp_status vmp_problem_save(const vmp_problem* p, const char* path);
VMP_API size_t vmp_problem_num_servers(const vmp_problem* p);
VMP_API size_t vmp_problem_num_vms(const vmp_problem* p);
VMP_API void vmp_problem_free(vmp_problem* p);

typedef struct vmp_problem_summary {
    double capacity_cpu, capacity_mem; /* totals over servers */
    double demand_cpu, demand_mem;     /* totals over vms */
    double largest_vm_ratio; /* largest single vm demand over mean server capacity */
} vmp_problem_summary;

VMP_API vmp_status vmp_problem_summarize(const vmp_problem* p, vmp_problem_summary* out);

/* ---- evaluation --------------------------------------------------------- */

typedef struct vmp_weights {
    double utilization;
    double load_balance;
    double active;
    double infeasibility_penalty;
} vmp_weights;

typedef struct vmp_report {
    double utilization;
    double load_balance;
    size_t active_servers;
    double resource_waste;
    int feasible;
    double scalar;
    double wall_time_ms;
    size_t cycles;
} vmp_report;

VMP_API void vmp_weights_init(vmp_weights* w);

/* assign holds vmp_problem_num_vms entries. weights may be NULL. */
VMP_API vmp_status vmp_evaluate(const vmp_problem* p, const uint32_t* assign, size_t count,
                                const vmp_weights* weights, vmp_report* out);
VMP_API vmp_status vmp_placement_from_json(const vmp_problem* p, const char* text,
                                           uint32_t* assign, size_t count);
VMP_API vmp_status vmp_placement_to_json(const uint32_t* assign, size_t count, char** out);

/* ---- solving ------------------------------------------------------------ */

typedef enum vmp_la_scope {
    VMP_LA_REGENERATED = 0,
    VMP_LA_INITIAL_POPULATION = 1,
    VMP_LA_BOTH = 2
} vmp_la_scope;

typedef void (*vmp_trace_fn)(void* user, size_t cycle, double best_scalar, size_t archive_size);

typedef struct vmp_solve_options {
    size_t pop;
    size_t cycles;
    vmp_weights weights;
    /* cuckoo search with learning automata */
    double p_a;
    double reward_a;
    double penalty_b;
    double la_fraction;
    vmp_la_scope la_scope;
    /* genetic algorithm */
    double crossover_rate;
    double mutation_rate;
    /* particle swarm */
    double inertia;
    double c1, c2;

    uint64_t seed;
    vmp_trace_fn trace;
    void* trace_user;
} vmp_solve_options;

VMP_API void vmp_solve_options_init(vmp_solve_options* opt);

/* algorithm: "lamocs", "ga", "pso" or "ffd". */
VMP_API vmp_status vmp_solve(const vmp_problem* p, const char* algorithm,
                             const vmp_solve_options* opt, vmp_result** out);
VMP_API vmp_status vmp_result_report(const vmp_result* r, vmp_report* out);
/* Copies vmp_problem_num_vms entries. */
VMP_API vmp_status vmp_result_placement(const vmp_result* r, uint32_t* assign, size_t count);
VMP_API vmp_status vmp_result_placement_json(const vmp_result* r, char** out);
VMP_API vmp_status vmp_result_report_json(const vmp_result* r, char** out);
VMP_API vmp_status vmp_result_report_csv(const vmp_result* r, int with_header, char** out);
/* Best scalar after each cycle; returns the history length and copies at
 * most `capacity` entries. */
VMP_API size_t vmp_result_history(const vmp_result* r, double* out, size_t capacity);
VMP_API size_t vmp_result_archive_size(const vmp_result* r);
VMP_API void vmp_result_free(vmp_result* r);

/* ---- benchmark sweep ---------------------------------------------------- */

typedef enum vmp_format { VMP_FORMAT_CSV = 0, VMP_FORMAT_JSON = 1 } vmp_format;

typedef struct vmp_bench_options {
    const size_t* vm_counts; /* NULL keeps the default 20, 40, ..., 100 */
    size_t vm_count_len;
    size_t servers;
    size_t reps;
    const char* algorithms; /* comma separated; NULL keeps lamocs,ga,pso */
    uint64_t base_seed;
    vmp_generator_options generator; /* servers, vms and seed are ignored */
    vmp_solve_options solve;         /* seed and trace are ignored */
    const size_t* pop_sizes;         /* non-empty switches to the population sweep */
    size_t pop_size_len;
    size_t pop_sweep_vms;
    size_t threads;
    int collect_traces;
    vmp_format format;
} vmp_bench_options;

typedef struct vmp_bench_output {
    char* raw;
    char* aggregate;
    char* metadata; /* JSON */
    char* trace;    /* JSON lines; empty unless traces were collected */
    size_t failures;
} vmp_bench_output;

VMP_API void vmp_bench_options_init(vmp_bench_options* opt);
VMP_API vmp_status vmp_bench(const vmp_bench_options* opt, vmp_bench_output* out);
VMP_API void vmp_bench_output_free(vmp_bench_output* out);

/* ---- oracle comparison -------------------------------------------------- */

typedef struct vmp_oracle_options {
    size_t count;
    size_t max_vms;
    size_t max_servers;
    const char* algorithms; /* comma separated; NULL keeps lamocs */
    uint64_t seed;
    vmp_generator_options generator; /* servers, vms and seed are ignored */
    vmp_solve_options solve;         /* seed and trace are ignored */
} vmp_oracle_options;

VMP_API void vmp_oracle_options_init(vmp_oracle_options* opt);
/* matches receives one count per algorithm (may be NULL); summary is JSON. */
VMP_API vmp_status vmp_oracle_check(const vmp_oracle_options* opt, size_t* matches,
                                    size_t matches_len, char** summary);

#ifdef __cplusplus
}
#endif

#endif
