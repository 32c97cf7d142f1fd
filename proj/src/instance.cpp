#include "vmplace/instance.hpp"

#include <cmath>
#include <string>

#include "vmplace/error.hpp"
#include "vmplace/random.hpp"

namespace vmp {

namespace {

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorCode::invalid_argument, what);
}

}  // namespace

PlacementProblem::PlacementProblem(std::vector<ResourceVector> servers,
                                   std::vector<ResourceVector> vms, double alpha, double beta)
    : servers_(std::move(servers)), vms_(std::move(vms)), alpha_(alpha), beta_(beta)
{
    if (servers_.empty())
        invalid("problem needs at least one server");
    if (vms_.empty())
        invalid("problem needs at least one virtual machine");
    if (!(alpha_ >= 0.0 && alpha_ <= 1.0 && beta_ >= 0.0 && beta_ <= 1.0))
        invalid("alpha and beta must lie in [0, 1]");
    if (std::abs(alpha_ + beta_ - 1.0) > 1e-9)
        invalid("alpha + beta must equal 1");

    ResourceVector sum;
    for (std::size_t j = 0; j < servers_.size(); ++j) {
        const auto& s = servers_[j];
        // Capacities divide demands in the utilization ratio, so zero is rejected.
        if (!finite_nonnegative(s.cpu) || !finite_nonnegative(s.mem) || s.cpu == 0.0 ||
            s.mem == 0.0)
            invalid("server " + std::to_string(j + 1) + " must have positive finite capacity");
        sum.cpu += s.cpu;
        sum.mem += s.mem;
    }
    for (std::size_t i = 0; i < vms_.size(); ++i) {
        const auto& v = vms_[i];
        if (!std::isfinite(v.cpu) || !std::isfinite(v.mem) || v.cpu <= 0.0 || v.mem <= 0.0)
            invalid("vm " + std::to_string(i + 1) + " must have strictly positive finite demand");
    }
    const auto m = static_cast<double>(servers_.size());
    mean_capacity_ = {sum.cpu / m, sum.mem / m};
}

double PlacementProblem::weighted_size(const ResourceVector& r) const noexcept
{
    return alpha_ * r.cpu / mean_capacity_.cpu + beta_ * r.mem / mean_capacity_.mem;
}

bool PlacementProblem::is_valid(const Placement& s) const noexcept
{
    if (s.size() != vms_.size())
        return false;
    for (auto server : s.assign)
        if (server >= servers_.size())
            return false;
    return true;
}

void PlacementProblem::require_valid(const Placement& s) const
{
    if (s.size() != vms_.size())
        invalid("placement has " + std::to_string(s.size()) + " entries, expected " +
                std::to_string(vms_.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >= servers_.size())
            invalid("placement entry " + std::to_string(i + 1) + " names server " +
                    std::to_string(s[i] + 1) + " outside [1, " +
                    std::to_string(servers_.size()) + "]");
}

ResourceVector total_capacity(const PlacementProblem& p)
{
    ResourceVector sum;
    for (const auto& s : p.servers()) {
        sum.cpu += s.cpu;
        sum.mem += s.mem;
    }
    return sum;
}

ResourceVector total_demand(const PlacementProblem& p)
{
    ResourceVector sum;
    for (const auto& v : p.vms()) {
        sum.cpu += v.cpu;
        sum.mem += v.mem;
    }
    return sum;
}

void GeneratorConfig::validate() const
{
    if (m < 1 || n < 1)
        invalid("generator needs at least one server and one vm");
    if (n <= m)
        invalid("generator requires more virtual machines than servers (n > m)");
    auto check_range = [](const std::pair<double, double>& r, const char* name) {
        if (!(std::isfinite(r.first) && std::isfinite(r.second) && r.first > 0.0 &&
              r.first <= r.second))
            invalid(std::string(name) + " range must satisfy 0 < lo <= hi");
    };
    check_range(cpu_range, "cpu");
    check_range(mem_range, "mem");
    if (!(demand_floor_ratio > 0.0 && demand_floor_ratio < 1.0))
        invalid("demand floor ratio must lie in (0, 1)");
    if (!(demand_ceiling_ratio > demand_floor_ratio))
        invalid("demand ceiling ratio must exceed the floor ratio");
    if (!(alpha >= 0.0 && alpha <= 1.0 && std::abs(alpha + beta - 1.0) <= 1e-9))
        invalid("alpha must lie in [0, 1] with alpha + beta = 1");
}

namespace {

constexpr int kScalingRounds = 100;
constexpr double kCapFraction = 0.99;

// Rescales one resource column of VM demands so the total lands in
// [floor, ceiling] while every entry stays in (0, cap]. Returns false when the
// loop runs out of rounds.
bool fit_demands(std::vector<double>& d, double cap, double floor_total, double ceiling_total)
{
    // Aim a hair inside the bounds so rounding in the sums cannot undo them.
    const double floor_target = floor_total * (1.0 + 1e-9);
    const double ceiling_target = ceiling_total * (1.0 - 1e-9);

    for (int round = 0; round < kScalingRounds; ++round) {
        double sum = 0.0;
        for (double x : d)
            sum += x;

        if (sum < floor_total) {
            for (double& x : d)
                x *= floor_target / sum;
        } else if (sum > ceiling_total) {
            for (double& x : d)
                x *= ceiling_target / sum;
        }

        double excess = 0.0;
        std::size_t below = 0;
        for (double& x : d) {
            if (x > cap) {
                excess += x - cap;
                x = cap;
            } else if (x < cap) {
                ++below;
            }
        }
        if (excess > 0.0) {
            if (below == 0)
                return false;
            const double share = excess / static_cast<double>(below);
            for (double& x : d)
                if (x < cap)
                    x += share;
        }

        bool within_cap = true;
        sum = 0.0;
        for (double x : d) {
            within_cap = within_cap && x <= cap && x > 0.0;
            sum += x;
        }
        if (within_cap && sum >= floor_total && sum <= ceiling_total)
            return true;
    }
    return false;
}

}  // namespace

PlacementProblem generate_instance(const GeneratorConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.seed);

    std::vector<ResourceVector> servers(cfg.m);
    ResourceVector total;
    for (auto& s : servers) {
        s.cpu = rng.uniform(cfg.cpu_range.first, cfg.cpu_range.second);
        s.mem = rng.uniform(cfg.mem_range.first, cfg.mem_range.second);
        total.cpu += s.cpu;
        total.mem += s.mem;
    }
    const auto m = static_cast<double>(cfg.m);
    const double cpu_cap = kCapFraction * total.cpu / m;
    const double mem_cap = kCapFraction * total.mem / m;

    std::vector<double> cpu(cfg.n);
    std::vector<double> mem(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        cpu[i] = cpu_cap * rng.uniform_open();
        mem[i] = mem_cap * rng.uniform_open();
    }

    if (!fit_demands(cpu, cpu_cap, cfg.demand_floor_ratio * total.cpu,
                     cfg.demand_ceiling_ratio * total.cpu) ||
        !fit_demands(mem, mem_cap, cfg.demand_floor_ratio * total.mem,
                     cfg.demand_ceiling_ratio * total.mem))
        throw Error(ErrorCode::generator_infeasible,
                    "infeasible generator config: demand floor cannot be met with every vm "
                    "below the mean server capacity");

    std::vector<ResourceVector> vms(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i)
        vms[i] = {cpu[i], mem[i]};
    return PlacementProblem(std::move(servers), std::move(vms), cfg.alpha, cfg.beta);
}

}  // namespace vmp
