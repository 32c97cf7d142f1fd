#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vmplace/instance.hpp"
#include "vmplace/objectives.hpp"
#include "vmplace/random.hpp"

namespace vmp {

// A candidate solution. `position` is continuous with entries in [1, m];
// `decoded` is always decode(position).
struct Nest {
    std::vector<double> position;
    Placement decoded;
    ObjectiveVector objectives;
    double scalar = 0.0;
};

struct SolveResult {
    Nest best;
    std::vector<Nest> archive;  // mutually non-dominated
    std::vector<double> history;  // best-so-far scalar after each cycle
    std::chrono::nanoseconds wall_time{0};
    std::size_t cycles_run = 0;
};

struct TraceRecord {
    std::size_t cycle = 0;
    double best_scalar = 0.0;
    std::size_t archive_size = 0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

// Round half up, then clamp into [1, m]; returns a zero-based placement.
Placement decode(std::span<const double> position, std::size_t m);
// Random point of [1, m]^n whose decoded servers are uniformly distributed.
std::vector<double> random_position(Rng& rng, std::size_t n, std::size_t m);

// Moves VMs off overloaded servers. Each move takes the lowest-index
// overloaded server and relocates its largest VM (by
// PlacementProblem::weighted_size) that some other server can still host,
// choosing the host with the most weighted slack. A server none of whose VMs
// can move is given up on, so the result may stay infeasible. At most n moves.
Placement repair(const PlacementProblem& p, Placement s);

// Evaluation path shared by every solver: decode, repair, write the repaired
// servers back into the position, evaluate and scalarize. When repair cannot
// reach feasibility and the unrepaired placement scores better, that one is
// kept instead (position untouched).
class NestFactory {
public:
    NestFactory(const PlacementProblem& problem, const ScalarWeights& weights)
        : problem_(problem), weights_(weights)
    {}

    Nest make(std::vector<double> position) const;
    Nest from_placement(const Placement& s) const;

    const PlacementProblem& problem() const noexcept { return problem_; }
    const ScalarWeights& weights() const noexcept { return weights_; }

private:
    const PlacementProblem& problem_;
    const ScalarWeights& weights_;
};

// Bounded set of mutually non-dominated nests. Nests whose objective vector
// is already present are rejected. Past capacity, the member with the
// smallest nearest-neighbour distance in range-normalized objective space is
// dropped.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 100);

    // Returns true when the nest entered the archive.
    bool insert(const Nest& nest);

    const std::vector<Nest>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }

private:
    void thin();

    std::size_t capacity_;
    std::vector<Nest> members_;
};

// Best-so-far bookkeeping shared by the population solvers.
class BestTracker {
public:
    void offer(const Nest& nest);
    bool empty() const noexcept { return !has_best_; }
    const Nest& best() const noexcept { return best_; }

private:
    Nest best_;
    bool has_best_ = false;
};

// Result for a single-server problem, where the only placement is all ones.
SolveResult single_server_result(const NestFactory& factory);

}  // namespace vmp
