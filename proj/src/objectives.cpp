#include "vmplace/objectives.hpp"

#include <cmath>

#include "vmplace/error.hpp"

namespace vmp {

std::vector<ServerLoad> server_loads(const PlacementProblem& p, const Placement& s)
{
    p.require_valid(s);
    const auto& servers = p.servers();
    const auto& vms = p.vms();

    std::vector<ServerLoad> loads(servers.size());
    for (std::size_t i = 0; i < vms.size(); ++i) {
        auto& load = loads[s[i]];
        load.cpu_used += vms[i].cpu;
        load.mem_used += vms[i].mem;
        load.active = true;
    }
    for (std::size_t j = 0; j < servers.size(); ++j) {
        auto& load = loads[j];
        load.utilization = p.alpha() * load.cpu_used / servers[j].cpu +
                           p.beta() * load.mem_used / servers[j].mem;
    }
    return loads;
}

std::size_t count_active(std::span<const ServerLoad> loads)
{
    std::size_t active = 0;
    for (const auto& l : loads)
        active += l.active ? 1 : 0;
    return active;
}

double eval_utilization(std::span<const ServerLoad> loads)
{
    double sum = 0.0;
    std::size_t active = 0;
    for (const auto& l : loads) {
        if (l.active) {
            sum += l.utilization;
            ++active;
        }
    }
    return active == 0 ? 0.0 : sum / static_cast<double>(active);
}

double eval_raw_utilization_sum(std::span<const ServerLoad> loads)
{
    double sum = 0.0;
    for (const auto& l : loads)
        sum += l.utilization;
    return sum;
}

double eval_load_balance(std::span<const ServerLoad> loads)
{
    const std::size_t active = count_active(loads);
    if (active == 0)
        throw Error(ErrorCode::invalid_argument, "load balance undefined: no active servers");
    const double mean = eval_utilization(loads);
    double squares = 0.0;
    for (const auto& l : loads) {
        if (l.active) {
            const double d = l.utilization - mean;
            squares += d * d;
        }
    }
    return std::sqrt(squares / static_cast<double>(active));
}

double eval_active_fraction(std::span<const ServerLoad> loads)
{
    if (loads.empty())
        return 0.0;
    return static_cast<double>(count_active(loads)) / static_cast<double>(loads.size());
}

double eval_resource_waste(std::span<const ServerLoad> loads)
{
    if (count_active(loads) == 0)
        throw Error(ErrorCode::invalid_argument, "resource waste undefined: no active servers");
    return 1.0 - eval_utilization(loads);
}

bool within_capacity(double used, double capacity) noexcept
{
    return used <= capacity * (1.0 + kCapacityTolerance);
}

FeasibilityReport check_feasible(const PlacementProblem& p, const Placement& s)
{
    const auto loads = server_loads(p, s);
    FeasibilityReport report;
    for (std::size_t j = 0; j < loads.size(); ++j) {
        const auto& cap = p.servers()[j];
        if (!within_capacity(loads[j].cpu_used, cap.cpu))
            report.violations.push_back({j, Resource::cpu, loads[j].cpu_used - cap.cpu});
        if (!within_capacity(loads[j].mem_used, cap.mem))
            report.violations.push_back({j, Resource::mem, loads[j].mem_used - cap.mem});
    }
    report.feasible = report.violations.empty();
    return report;
}

ObjectiveVector evaluate(const PlacementProblem& p, const Placement& s)
{
    const auto loads = server_loads(p, s);
    ObjectiveVector o;
    o.utilization = eval_utilization(loads);
    o.load_balance = eval_load_balance(loads);
    o.active_fraction = eval_active_fraction(loads);
    o.feasible = true;
    for (std::size_t j = 0; j < loads.size() && o.feasible; ++j) {
        const auto& cap = p.servers()[j];
        o.feasible = within_capacity(loads[j].cpu_used, cap.cpu) &&
                     within_capacity(loads[j].mem_used, cap.mem);
    }
    return o;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept
{
    if (a.feasible != b.feasible)
        return a.feasible;
    const bool no_worse = a.utilization >= b.utilization && a.load_balance <= b.load_balance &&
                          a.active_fraction <= b.active_fraction;
    const bool better = a.utilization > b.utilization || a.load_balance < b.load_balance ||
                        a.active_fraction < b.active_fraction;
    return no_worse && better;
}

void ScalarWeights::validate() const
{
    if (!(w_util >= 0.0 && w_lb >= 0.0 && w_active >= 0.0))
        throw Error(ErrorCode::invalid_argument, "scalar weights must be non-negative");
    if (std::abs(w_util + w_lb + w_active - 1.0) > 1e-9)
        throw Error(ErrorCode::invalid_argument, "scalar weights must sum to 1");
    if (!(infeasibility_penalty > 0.0 && std::isfinite(infeasibility_penalty)))
        throw Error(ErrorCode::invalid_argument, "infeasibility penalty must be positive");
}

double scalarize(const ObjectiveVector& o, const ScalarWeights& w) noexcept
{
    double value = w.w_util * (1.0 - o.utilization) + w.w_lb * o.load_balance +
                   w.w_active * o.active_fraction;
    if (!o.feasible)
        value += w.infeasibility_penalty;
    return value;
}

}  // namespace vmp
