#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vmplace/instance.hpp"
#include "vmplace/random.hpp"

namespace vmp {

// Variable-structure learning automaton over a fixed action set, kept on the
// probability simplex.
class Automaton {
public:
    // Uniform distribution over `actions` actions.
    explicit Automaton(std::size_t actions);
    // Explicit distribution; must be non-negative and sum to 1 within 1e-9.
    explicit Automaton(std::vector<double> probs);

    std::size_t num_actions() const noexcept { return probs_.size(); }
    std::span<const double> probabilities() const noexcept { return probs_; }
    double operator[](std::size_t action) const { return probs_[action]; }

    // Linear reward with factor a in [0, 1]:
    //   p_i <- p_i + a (1 - p_i)   for the rewarded action i
    //   p_j <- (1 - a) p_j         otherwise
    void reward(std::size_t action, double a);

    // Linear penalty with factor b in [0, 1):
    //   p_i <- (1 - b) p_i                  for the penalized action i
    //   p_j <- b / (M - 1) + (1 - b) p_j    otherwise
    // No effect with a single action.
    void penalize(std::size_t action, double b);

    // Inverse-CDF draw.
    std::size_t sample(Rng& rng) const;

private:
    void check_action(std::size_t action) const;
    void renormalize();

    std::vector<double> probs_;
};

// One automaton per VM, each choosing among the m servers.
class AutomatonBank {
public:
    AutomatonBank(std::size_t vms, std::size_t servers, double reward_a, double penalty_b);

    std::size_t num_vms() const noexcept { return automata_.size(); }
    std::size_t num_servers() const noexcept { return servers_; }
    double reward_factor() const noexcept { return reward_a_; }
    double penalty_factor() const noexcept { return penalty_b_; }
    const Automaton& operator[](std::size_t vm) const { return automata_[vm]; }
    std::span<const Automaton> automata() const noexcept { return automata_; }

    // Draws every VM's server from its automaton.
    Placement sample(Rng& rng) const;

    // Rewards each VM's action in `best`, then penalizes its action in
    // `worst`.
    void update(const Placement& best, const Placement& worst);

private:
    std::vector<Automaton> automata_;
    std::size_t servers_;
    double reward_a_;
    double penalty_b_;
};

}  // namespace vmp
