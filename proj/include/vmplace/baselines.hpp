#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vmplace/instance.hpp"
#include "vmplace/objectives.hpp"
#include "vmplace/search.hpp"

namespace vmp {

struct GaConfig {
    std::size_t pop = 100;
    std::size_t generations = 500;
    double crossover_rate = 0.7;
    double mutation_rate = 0.05;
    std::uint64_t seed = 0;
    ScalarWeights weights;
    std::size_t archive_capacity = 100;
    TraceSink trace;

    void validate() const;
};

// Generational GA over integer chromosomes: binary tournaments, single-point
// crossover, per-gene uniform-reset mutation and one elite survivor.
SolveResult solve_ga(const PlacementProblem& p, const GaConfig& cfg);

struct PsoConfig {
    std::size_t pop = 100;
    std::size_t iterations = 500;
    double inertia = 0.7;
    double c1 = 1.5;
    double c2 = 1.5;
    // Unset means 0.5 * (m - 1).
    std::optional<double> v_max;
    std::uint64_t seed = 0;
    ScalarWeights weights;
    std::size_t archive_capacity = 100;
    TraceSink trace;

    void validate() const;
};

// Global-best PSO over continuous positions in [1, m]^n, decoded like the
// cuckoo nests. Velocities start at zero.
SolveResult solve_pso(const PlacementProblem& p, const PsoConfig& cfg);

// First-fit decreasing on PlacementProblem::weighted_size. A VM that fits
// nowhere goes to the server with the most weighted slack.
Placement solve_ffd(const PlacementProblem& p);

struct ParetoPoint {
    ObjectiveVector objectives;
    Placement placement;  // first placement found with these objectives
    std::size_t multiplicity = 0;  // how many placements share them
};

struct BruteForceResult {
    Placement best;
    ObjectiveVector objectives;
    double scalar = 0.0;
    std::vector<ParetoPoint> pareto;
    std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Exhaustive enumeration of all m^n placements (no repair). Ties on the
// scalar keep the lexicographically first placement. Throws
// Error(instance_too_large) when m^n exceeds kBruteForceLimit.
BruteForceResult brute_force(const PlacementProblem& p, const ScalarWeights& w);

}  // namespace vmp
