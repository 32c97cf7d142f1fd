#include "vmplace/cuckoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vmplace/automata.hpp"
#include "vmplace/error.hpp"

namespace vmp {

void SolverConfig::validate() const
{
    auto fail = [](const char* what) { throw Error(ErrorCode::invalid_argument, what); };
    if (pop_size < 2)
        fail("population size must be at least 2");
    if (!(p_a >= 0.0 && p_a <= 1.0))
        fail("abandonment probability p_a must lie in [0, 1]");
    if (!(levy_beta > 1.0 && levy_beta <= 2.0))
        fail("levy beta must lie in (1, 2]");
    if (levy_scale && !(*levy_scale >= 0.0 && std::isfinite(*levy_scale)))
        fail("levy scale must be non-negative");
    if (!(attraction >= 0.0 && std::isfinite(attraction)))
        fail("attraction must be non-negative");
    if (!(la_fraction >= 0.0 && la_fraction <= 1.0))
        fail("la_fraction must lie in [0, 1]");
    if (!(reward_a > 0.0 && reward_a < 1.0))
        fail("reward factor must lie in (0, 1)");
    if (!(penalty_b >= 0.0 && penalty_b < 1.0))
        fail("penalty factor must lie in [0, 1)");
    if (archive_capacity == 0)
        fail("archive capacity must be positive");
    weights.validate();
}

double mantegna_sigma(double beta)
{
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

std::vector<double> levy_step(Rng& rng, double beta, std::size_t dim)
{
    if (!(beta > 1.0 && beta <= 2.0))
        throw Error(ErrorCode::invalid_argument, "levy beta must lie in (1, 2]");
    const double sigma = mantegna_sigma(beta);
    std::vector<double> steps(dim);
    for (auto& step : steps) {
        const double u = rng.normal() * sigma;
        const double v = rng.normal();
        step = u / std::pow(std::abs(v), 1.0 / beta);
    }
    return steps;
}

namespace {

std::vector<double> automaton_position(Rng& rng, const AutomatonBank& bank)
{
    const Placement s = bank.sample(rng);
    std::vector<double> position(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        position[i] = static_cast<double>(s[i] + 1);
    return position;
}

std::size_t ceil_fraction(double fraction, std::size_t count)
{
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(count) - 1e-12));
}

std::size_t best_index(const std::vector<Nest>& nests)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < nests.size(); ++i)
        if (nests[i].scalar < nests[best].scalar)
            best = i;
    return best;
}

std::size_t worst_index(const std::vector<Nest>& nests)
{
    std::size_t worst = 0;
    for (std::size_t i = 1; i < nests.size(); ++i)
        if (nests[i].scalar > nests[worst].scalar)
            worst = i;
    return worst;
}

}  // namespace

SolveResult solve_lamocs(const PlacementProblem& p, const SolverConfig& cfg)
{
    cfg.validate();
    const NestFactory factory(p, cfg.weights);
    if (p.num_servers() == 1)
        return single_server_result(factory);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = p.num_vms();
    const std::size_t m = p.num_servers();
    const double upper = static_cast<double>(m);
    const double scale = cfg.levy_scale.value_or(0.01 * (upper - 1.0));
    const bool la_initial = cfg.la_scope != LaScope::regenerated;
    const bool la_regen = cfg.la_scope != LaScope::initial_population;

    Rng rng(cfg.seed);
    AutomatonBank bank(n, m, cfg.reward_a, cfg.penalty_b);
    ParetoArchive archive(cfg.archive_capacity);
    BestTracker tracker;
    SolveResult result;

    std::vector<Nest> nests;
    nests.reserve(cfg.pop_size);
    const std::size_t la_initial_count = la_initial ? ceil_fraction(cfg.la_fraction, cfg.pop_size) : 0;
    for (std::size_t k = 0; k < cfg.pop_size; ++k) {
        auto position = k < la_initial_count ? automaton_position(rng, bank)
                                             : random_position(rng, n, m);
        nests.push_back(factory.make(std::move(position)));
        tracker.offer(nests.back());
    }

    const std::size_t abandon_count = ceil_fraction(cfg.p_a, cfg.pop_size);
    const std::size_t la_regen_count = la_regen ? ceil_fraction(cfg.la_fraction, abandon_count) : 0;
    std::vector<std::size_t> order(cfg.pop_size);

    for (std::size_t cycle = 0; cycle < cfg.max_cycles; ++cycle) {
        // 1. Levy flights biased toward the current best nest.
        std::size_t best = best_index(nests);
        for (std::size_t k = 0; k < cfg.pop_size; ++k) {
            const auto step = levy_step(rng, cfg.levy_beta, n);
            const auto& from = nests[k].position;
            const auto& toward = nests[best].position;
            std::vector<double> proposal(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double pull = cfg.attraction * rng.uniform() * (toward[i] - from[i]);
                proposal[i] = std::clamp(from[i] + scale * step[i] + pull, 1.0, upper);
            }
            Nest candidate = factory.make(std::move(proposal));
            const std::size_t target = rng.below(cfg.pop_size);
            if (candidate.scalar < nests[target].scalar) {
                tracker.offer(candidate);
                nests[target] = std::move(candidate);
                if (nests[target].scalar < nests[best].scalar)
                    best = target;
            }
        }

        // 2. Abandon and rebuild a fraction of the nests.
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (cfg.abandon_worst) {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return nests[a].scalar > nests[b].scalar;
            });
        } else {
            for (std::size_t k = order.size(); k > 1; --k)
                std::swap(order[k - 1], order[rng.below(k)]);
        }
        for (std::size_t r = 0; r < abandon_count; ++r) {
            auto position = r < la_regen_count ? automaton_position(rng, bank)
                                               : random_position(rng, n, m);
            nests[order[r]] = factory.make(std::move(position));
            tracker.offer(nests[order[r]]);
        }

        // 3. Reinforce the automata with this cycle's best and worst nests.
        bank.update(nests[best_index(nests)].decoded, nests[worst_index(nests)].decoded);

        // 4. Archive.
        for (const auto& nest : nests)
            archive.insert(nest);

        result.history.push_back(tracker.best().scalar);
        result.cycles_run = cycle + 1;
        if (cfg.trace)
            cfg.trace({cycle + 1, tracker.best().scalar, archive.size()});
    }

    // The archive only sees the population at cycle ends; the best nest may
    // have been overwritten before that.
    archive.insert(tracker.best());
    result.best = tracker.best();
    result.archive = archive.members();
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace vmp
