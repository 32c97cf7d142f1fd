#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmplace/instance.hpp"

namespace vmp {

// Relative slack allowed when comparing summed demand against capacity, so an
// exact fill built from inexact decimal fractions still counts as feasible.
inline constexpr double kCapacityTolerance = 1e-9;

struct ServerLoad {
    double cpu_used = 0.0;
    double mem_used = 0.0;
    // alpha * cpu_used / cpu_capacity + beta * mem_used / mem_capacity
    double utilization = 0.0;
    bool active = false;
};

std::vector<ServerLoad> server_loads(const PlacementProblem& p, const Placement& s);

// Mean utilization over active servers; 0 when nothing is active.
double eval_utilization(std::span<const ServerLoad> loads);

// Unnormalized sum of per-server utilization over all servers, as the
// aggregate is usually printed. Reported for diagnostics only.
double eval_raw_utilization_sum(std::span<const ServerLoad> loads);

// Population standard deviation of utilization over active servers. Throws
// Error(invalid_argument) when no server is active.
double eval_load_balance(std::span<const ServerLoad> loads);

double eval_active_fraction(std::span<const ServerLoad> loads);
std::size_t count_active(std::span<const ServerLoad> loads);

// Mean of (1 - utilization) over active servers. Throws like
// eval_load_balance.
double eval_resource_waste(std::span<const ServerLoad> loads);

enum class Resource { cpu, mem };

struct Violation {
    std::size_t server = 0;  // zero-based
    Resource resource = Resource::cpu;
    double overload = 0.0;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

bool within_capacity(double used, double capacity) noexcept;

FeasibilityReport check_feasible(const PlacementProblem& p, const Placement& s);

struct ObjectiveVector {
    double utilization = 0.0;      // maximize
    double load_balance = 0.0;     // minimize
    double active_fraction = 0.0;  // minimize
    bool feasible = false;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

ObjectiveVector evaluate(const PlacementProblem& p, const Placement& s);

// Pareto dominance with feasibility first: a feasible vector dominates any
// infeasible one; otherwise a must be no worse everywhere and better somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;

struct ScalarWeights {
    double w_util = 1.0 / 3.0;
    double w_lb = 1.0 / 3.0;
    double w_active = 1.0 / 3.0;
    double infeasibility_penalty = 10.0;

    void validate() const;
};

// Lower is better.
double scalarize(const ObjectiveVector& o, const ScalarWeights& w) noexcept;

}  // namespace vmp
