#include "vmplace/automata.hpp"

#include <cmath>
#include <string>

#include "vmplace/error.hpp"

namespace vmp {

namespace {

constexpr double kSimplexTolerance = 1e-9;
constexpr double kRenormalizeThreshold = 1e-12;

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorCode::invalid_argument, what);
}

}  // namespace

Automaton::Automaton(std::size_t actions)
{
    if (actions == 0)
        invalid("automaton needs at least one action");
    probs_.assign(actions, 1.0 / static_cast<double>(actions));
}

Automaton::Automaton(std::vector<double> probs) : probs_(std::move(probs))
{
    if (probs_.empty())
        invalid("automaton needs at least one action");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0))
            invalid("automaton probabilities must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance)
        invalid("automaton probabilities must sum to 1");
}

void Automaton::check_action(std::size_t action) const
{
    if (action >= probs_.size())
        invalid("action " + std::to_string(action) + " out of range for automaton with " +
                std::to_string(probs_.size()) + " actions");
}

void Automaton::renormalize()
{
    double sum = 0.0;
    for (double p : probs_)
        sum += p;
    if (std::abs(sum - 1.0) > kRenormalizeThreshold)
        for (double& p : probs_)
            p /= sum;
}

void Automaton::reward(std::size_t action, double a)
{
    check_action(action);
    if (!(a >= 0.0 && a <= 1.0))
        invalid("reward factor must lie in [0, 1]");
    for (std::size_t j = 0; j < probs_.size(); ++j)
        probs_[j] = j == action ? probs_[j] + a * (1.0 - probs_[j]) : (1.0 - a) * probs_[j];
    renormalize();
}

void Automaton::penalize(std::size_t action, double b)
{
    check_action(action);
    if (!(b >= 0.0 && b < 1.0))
        invalid("penalty factor must lie in [0, 1)");
    if (probs_.size() < 2)
        return;
    const double spread = b / static_cast<double>(probs_.size() - 1);
    for (std::size_t j = 0; j < probs_.size(); ++j)
        probs_[j] = j == action ? (1.0 - b) * probs_[j] : spread + (1.0 - b) * probs_[j];
    renormalize();
}

std::size_t Automaton::sample(Rng& rng) const
{
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t j = 0; j < probs_.size(); ++j) {
        if (probs_[j] <= 0.0)
            continue;
        cumulative += probs_[j];
        last_positive = j;
        if (u < cumulative)
            return j;
    }
    // u landed in the rounding gap above the accumulated mass.
    return last_positive;
}

AutomatonBank::AutomatonBank(std::size_t vms, std::size_t servers, double reward_a,
                             double penalty_b)
    : servers_(servers), reward_a_(reward_a), penalty_b_(penalty_b)
{
    if (vms == 0 || servers == 0)
        invalid("automaton bank needs at least one vm and one server");
    if (!(reward_a > 0.0 && reward_a < 1.0))
        invalid("reward factor must lie in (0, 1)");
    if (!(penalty_b >= 0.0 && penalty_b < 1.0))
        invalid("penalty factor must lie in [0, 1)");
    automata_.assign(vms, Automaton(servers));
}

Placement AutomatonBank::sample(Rng& rng) const
{
    Placement s;
    s.assign.reserve(automata_.size());
    for (const auto& a : automata_)
        s.assign.push_back(static_cast<std::uint32_t>(a.sample(rng)));
    return s;
}

void AutomatonBank::update(const Placement& best, const Placement& worst)
{
    if (best.size() != automata_.size() || worst.size() != automata_.size())
        invalid("best/worst placement length does not match the automaton bank");
    for (std::size_t i = 0; i < automata_.size(); ++i) {
        automata_[i].reward(best[i], reward_a_);
        automata_[i].penalize(worst[i], penalty_b_);
    }
}

}  // namespace vmp
