#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace vmp {

// cpu in abstract capacity units (GHz-equivalents), mem in gigabytes.
struct ResourceVector {
    double cpu = 0.0;
    double mem = 0.0;

    friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
};

// Assignment of every VM to a server. Indices are zero-based in memory;
// files and the C API use one-based indices.
struct Placement {
    std::vector<std::uint32_t> assign;

    std::size_t size() const noexcept { return assign.size(); }
    std::uint32_t operator[](std::size_t vm) const { return assign[vm]; }

    friend bool operator==(const Placement&, const Placement&) = default;
};

// Immutable placement instance. Construction validates every invariant, so a
// PlacementProblem that exists is a valid one.
class PlacementProblem {
public:
    PlacementProblem(std::vector<ResourceVector> servers, std::vector<ResourceVector> vms,
                     double alpha = 0.5, double beta = 0.5);

    const std::vector<ResourceVector>& servers() const noexcept { return servers_; }
    const std::vector<ResourceVector>& vms() const noexcept { return vms_; }
    std::size_t num_servers() const noexcept { return servers_.size(); }
    std::size_t num_vms() const noexcept { return vms_.size(); }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    ResourceVector mean_capacity() const noexcept { return mean_capacity_; }

    // alpha * cpu / mean_cpu + beta * mem / mean_mem; the size measure used by
    // repair and first-fit-decreasing.
    double weighted_size(const ResourceVector& r) const noexcept;

    bool is_valid(const Placement& s) const noexcept;
    // Throws Error(invalid_argument) when s has the wrong length or an index
    // out of range.
    void require_valid(const Placement& s) const;

    friend bool operator==(const PlacementProblem&, const PlacementProblem&) = default;

private:
    std::vector<ResourceVector> servers_;
    std::vector<ResourceVector> vms_;
    double alpha_;
    double beta_;
    ResourceVector mean_capacity_;
};

ResourceVector total_capacity(const PlacementProblem& p);
ResourceVector total_demand(const PlacementProblem& p);

struct GeneratorConfig {
    std::size_t m = 20;
    std::size_t n = 40;
    std::pair<double, double> cpu_range{10.0, 30.0};
    std::pair<double, double> mem_range{16.0, 64.0};
    double demand_floor_ratio = 0.9;
    // Upper bound on total demand as a fraction of total capacity. Raw draws
    // above it are scaled down; without it large n/m ratios would produce
    // instances whose demand exceeds the whole data center.
    double demand_ceiling_ratio = 0.95;
    double alpha = 0.5;
    double beta = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

// Every VM demand is strictly below 0.99 x the mean server capacity in both
// resources, and total demand lies in [floor, ceiling] x total capacity per
// resource. Throws Error(generator_infeasible) if the bounded scaling loop
// cannot satisfy both.
PlacementProblem generate_instance(const GeneratorConfig& cfg);

}  // namespace vmp
