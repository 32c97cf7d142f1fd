#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vmplace/instance.hpp"
#include "vmplace/objectives.hpp"
#include "vmplace/random.hpp"
#include "vmplace/search.hpp"

namespace vmp {

// Where automaton-sampled solutions replace uniform random ones.
enum class LaScope { regenerated, initial_population, both };

struct SolverConfig {
    std::size_t pop_size = 100;
    std::size_t max_cycles = 500;
    // Fraction of nests abandoned each cycle.
    double p_a = 0.25;
    double levy_beta = 1.5;
    // Multiplies the Levy step; unset means 0.01 * (m - 1).
    std::optional<double> levy_scale;
    // Strength of the pull toward the best nest in each proposal:
    // x + levy_scale * L + attraction * U(0,1) * (best - x), per coordinate.
    double attraction = 0.3;
    std::uint64_t seed = 0;
    ScalarWeights weights;
    // Share of freshly created nests drawn from the automaton bank.
    double la_fraction = 0.5;
    double reward_a = 0.5;
    double penalty_b = 0.05;
    LaScope la_scope = LaScope::both;
    // Abandon the worst-ranked nests (true) or uniformly chosen ones (false).
    bool abandon_worst = true;
    std::size_t archive_capacity = 100;
    TraceSink trace;

    void validate() const;
};

// sigma_u of Mantegna's algorithm for stability index beta.
double mantegna_sigma(double beta);

// dim independent Levy-stable steps u / |v|^(1/beta), u ~ N(0, sigma_u^2),
// v ~ N(0, 1). Requires 1 < beta <= 2.
std::vector<double> levy_step(Rng& rng, double beta, std::size_t dim);

// Learning-automata-guided multi-objective cuckoo search.
//
// Each cycle:
//  1. every nest proposes a Levy flight biased toward the best nest; the
//     proposal replaces a uniformly chosen nest if its scalar is lower;
//  2. ceil(p_a * pop) nests are abandoned and rebuilt, ceil(la_fraction * k)
//     of them sampled from the automaton bank, the rest uniformly;
//  3. the bank rewards the best nest's servers and penalizes the worst's;
//  4. the Pareto archive absorbs the population.
SolveResult solve_lamocs(const PlacementProblem& p, const SolverConfig& cfg);

}  // namespace vmp
