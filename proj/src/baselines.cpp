#include "vmplace/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "vmplace/error.hpp"
#include "vmplace/random.hpp"

namespace vmp {

namespace {

[[noreturn]] void invalid(const char* what) { throw Error(ErrorCode::invalid_argument, what); }

Placement random_placement(Rng& rng, std::size_t n, std::size_t m)
{
    Placement s;
    s.assign.resize(n);
    for (auto& server : s.assign)
        server = static_cast<std::uint32_t>(rng.below(m));
    return s;
}

std::size_t best_index(const std::vector<Nest>& nests)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < nests.size(); ++i)
        if (nests[i].scalar < nests[best].scalar)
            best = i;
    return best;
}

}  // namespace

void GaConfig::validate() const
{
    if (pop < 2)
        invalid("GA population must be at least 2");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        invalid("crossover rate must lie in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        invalid("mutation rate must lie in [0, 1]");
    if (archive_capacity == 0)
        invalid("archive capacity must be positive");
    weights.validate();
}

SolveResult solve_ga(const PlacementProblem& p, const GaConfig& cfg)
{
    cfg.validate();
    const NestFactory factory(p, cfg.weights);
    if (p.num_servers() == 1)
        return single_server_result(factory);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = p.num_vms();
    const std::size_t m = p.num_servers();
    Rng rng(cfg.seed);
    ParetoArchive archive(cfg.archive_capacity);
    BestTracker tracker;
    SolveResult result;

    std::vector<Nest> population;
    population.reserve(cfg.pop);
    for (std::size_t k = 0; k < cfg.pop; ++k) {
        population.push_back(factory.from_placement(random_placement(rng, n, m)));
        tracker.offer(population.back());
    }

    auto tournament = [&]() -> const Nest& {
        const std::size_t a = rng.below(cfg.pop);
        const std::size_t b = rng.below(cfg.pop);
        return population[b].scalar < population[a].scalar ? population[b] : population[a];
    };
    auto mutate = [&](Placement& s) {
        for (auto& gene : s.assign)
            if (rng.bernoulli(cfg.mutation_rate))
                gene = static_cast<std::uint32_t>(rng.below(m));
    };

    std::vector<Nest> next;
    next.reserve(cfg.pop);
    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        next.clear();
        next.push_back(population[best_index(population)]);
        while (next.size() < cfg.pop) {
            Placement child_a = tournament().decoded;
            Placement child_b = tournament().decoded;
            if (n >= 2 && rng.bernoulli(cfg.crossover_rate)) {
                const std::size_t cut = 1 + rng.below(n - 1);
                std::swap_ranges(child_a.assign.begin() + static_cast<std::ptrdiff_t>(cut),
                                 child_a.assign.end(),
                                 child_b.assign.begin() + static_cast<std::ptrdiff_t>(cut));
            }
            mutate(child_a);
            mutate(child_b);
            next.push_back(factory.from_placement(child_a));
            tracker.offer(next.back());
            if (next.size() < cfg.pop) {
                next.push_back(factory.from_placement(child_b));
                tracker.offer(next.back());
            }
        }
        population.swap(next);

        for (const auto& nest : population)
            archive.insert(nest);
        result.history.push_back(tracker.best().scalar);
        result.cycles_run = gen + 1;
        if (cfg.trace)
            cfg.trace({gen + 1, tracker.best().scalar, archive.size()});
    }

    archive.insert(tracker.best());
    result.best = tracker.best();
    result.archive = archive.members();
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

void PsoConfig::validate() const
{
    if (pop < 2)
        invalid("PSO swarm must have at least 2 particles");
    if (!(std::isfinite(inertia) && std::isfinite(c1) && std::isfinite(c2)))
        invalid("PSO coefficients must be finite");
    if (v_max && !(*v_max > 0.0 && std::isfinite(*v_max)))
        invalid("PSO velocity clamp must be positive");
    if (archive_capacity == 0)
        invalid("archive capacity must be positive");
    weights.validate();
}

SolveResult solve_pso(const PlacementProblem& p, const PsoConfig& cfg)
{
    cfg.validate();
    const NestFactory factory(p, cfg.weights);
    if (p.num_servers() == 1)
        return single_server_result(factory);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = p.num_vms();
    const double upper = static_cast<double>(p.num_servers());
    const double v_max = cfg.v_max.value_or(0.5 * (upper - 1.0));
    Rng rng(cfg.seed);
    ParetoArchive archive(cfg.archive_capacity);
    BestTracker tracker;
    SolveResult result;

    std::vector<Nest> particles;
    particles.reserve(cfg.pop);
    for (std::size_t k = 0; k < cfg.pop; ++k) {
        particles.push_back(factory.make(random_position(rng, n, p.num_servers())));
        tracker.offer(particles.back());
    }
    std::vector<Nest> personal_best = particles;
    std::vector<std::vector<double>> velocity(cfg.pop, std::vector<double>(n, 0.0));
    std::size_t global_best = best_index(personal_best);

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        const std::vector<double> gbest = personal_best[global_best].position;
        for (std::size_t k = 0; k < cfg.pop; ++k) {
            std::vector<double> position = particles[k].position;
            const auto& pbest = personal_best[k].position;
            auto& v = velocity[k];
            for (std::size_t i = 0; i < n; ++i) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                v[i] = cfg.inertia * v[i] + cfg.c1 * r1 * (pbest[i] - position[i]) +
                       cfg.c2 * r2 * (gbest[i] - position[i]);
                v[i] = std::clamp(v[i], -v_max, v_max);
                position[i] = std::clamp(position[i] + v[i], 1.0, upper);
            }
            particles[k] = factory.make(std::move(position));
            tracker.offer(particles[k]);
            if (particles[k].scalar < personal_best[k].scalar)
                personal_best[k] = particles[k];
        }
        global_best = best_index(personal_best);

        for (const auto& nest : particles)
            archive.insert(nest);
        result.history.push_back(tracker.best().scalar);
        result.cycles_run = iter + 1;
        if (cfg.trace)
            cfg.trace({iter + 1, tracker.best().scalar, archive.size()});
    }

    archive.insert(tracker.best());
    result.best = tracker.best();
    result.archive = archive.members();
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

Placement solve_ffd(const PlacementProblem& p)
{
    const auto& servers = p.servers();
    const auto& vms = p.vms();
    const auto mean = p.mean_capacity();

    std::vector<std::size_t> order(vms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return p.weighted_size(vms[a]) > p.weighted_size(vms[b]);
    });

    std::vector<ResourceVector> used(servers.size());
    Placement s;
    s.assign.assign(vms.size(), 0);
    for (std::size_t i : order) {
        const auto& vm = vms[i];
        std::size_t chosen = servers.size();
        for (std::size_t j = 0; j < servers.size(); ++j) {
            if (within_capacity(used[j].cpu + vm.cpu, servers[j].cpu) &&
                within_capacity(used[j].mem + vm.mem, servers[j].mem)) {
                chosen = j;
                break;
            }
        }
        if (chosen == servers.size()) {
            double best_slack = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < servers.size(); ++j) {
                const double slack = p.alpha() * (servers[j].cpu - used[j].cpu) / mean.cpu +
                                     p.beta() * (servers[j].mem - used[j].mem) / mean.mem;
                if (slack > best_slack) {
                    best_slack = slack;
                    chosen = j;
                }
            }
        }
        used[chosen].cpu += vm.cpu;
        used[chosen].mem += vm.mem;
        s.assign[i] = static_cast<std::uint32_t>(chosen);
    }
    return s;
}

BruteForceResult brute_force(const PlacementProblem& p, const ScalarWeights& w)
{
    w.validate();
    const std::size_t n = p.num_vms();
    const std::size_t m = p.num_servers();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > kBruteForceLimit / m)
            throw Error(ErrorCode::instance_too_large,
                        "instance too large for brute force: m^n exceeds 10^7");
        total *= m;
    }

    BruteForceResult result;
    Placement s;
    s.assign.assign(n, 0);
    bool have_best = false;
    for (std::uint64_t count = 0; count < total; ++count) {
        const ObjectiveVector o = evaluate(p, s);
        const double scalar = scalarize(o, w);
        if (!have_best || scalar < result.scalar) {
            result.best = s;
            result.objectives = o;
            result.scalar = scalar;
            have_best = true;
        }

        bool dominated = false;
        for (auto& point : result.pareto) {
            if (point.objectives == o) {
                ++point.multiplicity;
                dominated = true;
                break;
            }
            if (dominates(point.objectives, o)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            std::erase_if(result.pareto,
                          [&](const ParetoPoint& point) { return dominates(o, point.objectives); });
            result.pareto.push_back({o, s, 1});
        }

        // Odometer increment, last VM fastest.
        for (std::size_t i = n; i-- > 0;) {
            if (++s.assign[i] < m)
                break;
            s.assign[i] = 0;
        }
        ++result.enumerated;
    }
    return result;
}

}  // namespace vmp
