#include "vmplace/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "vmplace/error.hpp"

namespace vmp {

Placement decode(std::span<const double> position, std::size_t m)
{
    Placement s;
    s.assign.reserve(position.size());
    const auto upper = static_cast<double>(m);
    for (double x : position) {
        double index = std::floor(x + 0.5);
        if (!(index >= 1.0))  // also catches NaN
            index = 1.0;
        if (index > upper)
            index = upper;
        s.assign.push_back(static_cast<std::uint32_t>(index) - 1);
    }
    return s;
}

std::vector<double> random_position(Rng& rng, std::size_t n, std::size_t m)
{
    // Half-width end bins under rounding; drawing over [0.5, m + 0.5] and
    // clamping evens them out.
    const auto upper = static_cast<double>(m);
    std::vector<double> position(n);
    for (auto& x : position)
        x = std::clamp(rng.uniform(0.5, upper + 0.5), 1.0, upper);
    return position;
}

Placement repair(const PlacementProblem& p, Placement s)
{
    p.require_valid(s);
    const auto& servers = p.servers();
    const auto& vms = p.vms();
    const auto mean = p.mean_capacity();

    std::vector<ResourceVector> used(servers.size());
    for (std::size_t i = 0; i < vms.size(); ++i) {
        used[s[i]].cpu += vms[i].cpu;
        used[s[i]].mem += vms[i].mem;
    }
    auto overloaded = [&](std::size_t j) {
        return !within_capacity(used[j].cpu, servers[j].cpu) ||
               !within_capacity(used[j].mem, servers[j].mem);
    };

    auto best_target = [&](std::size_t vm_index, std::size_t source) {
        const auto& vm = vms[vm_index];
        std::size_t target = servers.size();
        double best_slack = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < servers.size(); ++k) {
            if (k == source)
                continue;
            if (!within_capacity(used[k].cpu + vm.cpu, servers[k].cpu) ||
                !within_capacity(used[k].mem + vm.mem, servers[k].mem))
                continue;
            const double slack = p.alpha() * (servers[k].cpu - used[k].cpu) / mean.cpu +
                                 p.beta() * (servers[k].mem - used[k].mem) / mean.mem;
            if (slack > best_slack) {
                best_slack = slack;
                target = k;
            }
        }
        return target;
    };

    std::vector<bool> stuck(servers.size(), false);
    std::vector<std::size_t> hosted;
    std::size_t moves = 0;
    while (moves < vms.size()) {
        std::size_t source = servers.size();
        for (std::size_t j = 0; j < servers.size(); ++j) {
            if (!stuck[j] && overloaded(j)) {
                source = j;
                break;
            }
        }
        if (source == servers.size())
            break;

        // Largest VM first; fall back to smaller ones that fit elsewhere.
        hosted.clear();
        for (std::size_t i = 0; i < vms.size(); ++i)
            if (s[i] == source)
                hosted.push_back(i);
        std::stable_sort(hosted.begin(), hosted.end(), [&](std::size_t a, std::size_t b) {
            return p.weighted_size(vms[a]) > p.weighted_size(vms[b]);
        });

        bool moved = false;
        for (std::size_t victim : hosted) {
            const std::size_t target = best_target(victim, source);
            if (target == servers.size())
                continue;
            const auto& vm = vms[victim];
            used[source].cpu -= vm.cpu;
            used[source].mem -= vm.mem;
            used[target].cpu += vm.cpu;
            used[target].mem += vm.mem;
            s.assign[victim] = static_cast<std::uint32_t>(target);
            ++moves;
            moved = true;
            break;
        }
        if (!moved)
            stuck[source] = true;
    }
    return s;
}

Nest NestFactory::make(std::vector<double> position) const
{
    Nest nest;
    Placement decoded = decode(position, problem_.num_servers());
    nest.decoded = repair(problem_, decoded);
    nest.objectives = evaluate(problem_, nest.decoded);
    nest.scalar = scalarize(nest.objectives, weights_);

    // A repair that ends infeasible is only kept if it scores better than the
    // unrepaired placement; otherwise some placements could never be reached.
    if (!nest.objectives.feasible && !(nest.decoded == decoded)) {
        const ObjectiveVector raw = evaluate(problem_, decoded);
        const double raw_scalar = scalarize(raw, weights_);
        if (raw_scalar < nest.scalar) {
            nest.decoded = std::move(decoded);
            nest.objectives = raw;
            nest.scalar = raw_scalar;
            nest.position = std::move(position);
            return nest;
        }
    }
    for (std::size_t i = 0; i < position.size(); ++i)
        if (nest.decoded[i] != decoded[i])
            position[i] = static_cast<double>(nest.decoded[i] + 1);
    nest.position = std::move(position);
    return nest;
}

Nest NestFactory::from_placement(const Placement& s) const
{
    std::vector<double> position(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        position[i] = static_cast<double>(s[i] + 1);
    return make(std::move(position));
}

ParetoArchive::ParetoArchive(std::size_t capacity) : capacity_(capacity)
{
    if (capacity_ == 0)
        throw Error(ErrorCode::invalid_argument, "archive capacity must be positive");
}

bool ParetoArchive::insert(const Nest& nest)
{
    for (const auto& member : members_)
        if (member.objectives == nest.objectives || dominates(member.objectives, nest.objectives))
            return false;
    std::erase_if(members_, [&](const Nest& member) {
        return dominates(nest.objectives, member.objectives);
    });
    members_.push_back(nest);
    if (members_.size() > capacity_)
        thin();
    return true;
}

void ParetoArchive::thin()
{
    constexpr std::size_t kDims = 3;
    auto coords = [](const ObjectiveVector& o) {
        return std::array<double, kDims>{o.utilization, o.load_balance, o.active_fraction};
    };

    std::array<double, kDims> lo;
    std::array<double, kDims> hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& member : members_) {
        const auto c = coords(member.objectives);
        for (std::size_t d = 0; d < kDims; ++d) {
            lo[d] = std::min(lo[d], c[d]);
            hi[d] = std::max(hi[d], c[d]);
        }
    }

    std::vector<std::array<double, kDims>> normalized;
    normalized.reserve(members_.size());
    for (const auto& member : members_) {
        auto c = coords(member.objectives);
        for (std::size_t d = 0; d < kDims; ++d) {
            const double range = hi[d] - lo[d];
            c[d] = range > 0.0 ? (c[d] - lo[d]) / range : 0.0;
        }
        normalized.push_back(c);
    }

    std::size_t drop = 0;
    double drop_distance = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < normalized.size(); ++a) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < normalized.size(); ++b) {
            if (a == b)
                continue;
            double dist = 0.0;
            for (std::size_t d = 0; d < kDims; ++d) {
                const double diff = normalized[a][d] - normalized[b][d];
                dist += diff * diff;
            }
            nearest = std::min(nearest, dist);
        }
        // Among equally crowded members, drop the one with the worse scalar.
        if (nearest < drop_distance ||
            (nearest == drop_distance && members_[a].scalar >= members_[drop].scalar)) {
            drop = a;
            drop_distance = nearest;
        }
    }
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(drop));
}

void BestTracker::offer(const Nest& nest)
{
    if (!has_best_ || nest.scalar < best_.scalar) {
        best_ = nest;
        has_best_ = true;
    }
}

SolveResult single_server_result(const NestFactory& factory)
{
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    Placement s;
    s.assign.assign(factory.problem().num_vms(), 0);
    result.best = factory.from_placement(s);
    result.archive.push_back(result.best);
    result.history.push_back(result.best.scalar);
    result.cycles_run = 1;
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace vmp
