#include "doctest.h"

#include <cmath>
#include <numeric>

#include "vmplace/automata.hpp"
#include "vmplace/error.hpp"

using namespace vmp;

namespace {

void check_probs(const Automaton& a, std::initializer_list<double> expected)
{
    REQUIRE(a.num_actions() == expected.size());
    std::size_t i = 0;
    for (double e : expected)
        CHECK(std::abs(a[i++] - e) <= 1e-12);
}

double simplex_error(const Automaton& a)
{
    const auto p = a.probabilities();
    return std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0);
}

}  // namespace

TEST_CASE("initial distributions are uniform")
{
    const AutomatonBank bank(2, 4, 0.5, 0.05);
    for (const auto& a : bank.automata())
        check_probs(a, {0.25, 0.25, 0.25, 0.25});
    check_probs(Automaton(1), {1.0});
}

TEST_CASE("reward")
{
    Automaton two(2);
    two.reward(0, 0.5);
    check_probs(two, {0.75, 0.25});

    Automaton three(3);
    three.reward(1, 0.5);
    check_probs(three, {1.0 / 6, 2.0 / 3, 1.0 / 6});

    Automaton fixed(std::vector<double>{0.2, 0.3, 0.5});
    fixed.reward(2, 0.0);
    check_probs(fixed, {0.2, 0.3, 0.5});
}

TEST_CASE("penalty")
{
    Automaton two(2);
    two.penalize(0, 0.1);
    check_probs(two, {0.45, 0.55});

    Automaton same(std::vector<double>{0.2, 0.3, 0.5});
    same.penalize(1, 0.0);
    check_probs(same, {0.2, 0.3, 0.5});

    Automaton single(1);
    single.penalize(0, 0.5);
    check_probs(single, {1.0});
}

TEST_CASE("argument checks")
{
    Automaton a(3);
    CHECK_THROWS_AS(a.reward(3, 0.5), Error);
    CHECK_THROWS_AS(a.reward(0, 1.5), Error);
    CHECK_THROWS_AS(a.penalize(0, 1.0), Error);
    CHECK_THROWS_AS(Automaton(std::vector<double>{0.5, 0.6}), Error);
    CHECK_THROWS_AS(Automaton(std::vector<double>{1.5, -0.5}), Error);
    CHECK_THROWS_AS(AutomatonBank(2, 2, 0.0, 0.1), Error);
}

TEST_CASE("bank update rewards best then penalizes worst")
{
    AutomatonBank bank(1, 2, 0.5, 0.1);
    bank.update(Placement{{0}}, Placement{{1}});
    check_probs(bank[0], {0.775, 0.225});

    // Same action on both sides: reward then penalty on that action.
    AutomatonBank both(1, 3, 0.5, 0.1);
    both.update(Placement{{2}}, Placement{{2}});
    Automaton manual(3);
    manual.reward(2, 0.5);
    manual.penalize(2, 0.1);
    check_probs(both[0], {manual[0], manual[1], manual[2]});
}

TEST_CASE("sampling")
{
    Rng rng(4);
    const Automaton degenerate(std::vector<double>{0, 1, 0});
    for (int i = 0; i < 1000; ++i)
        CHECK(degenerate.sample(rng) == 1);

    const Automaton uniform(4);
    std::vector<int> counts(4, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        ++counts[uniform.sample(rng)];
    for (int c : counts)
        CHECK(std::abs(static_cast<double>(c) / draws - 0.25) < 0.01);

    const AutomatonBank bank(5, 3, 0.5, 0.05);
    Rng a(8);
    Rng b(8);
    CHECK(bank.sample(a) == bank.sample(b));
}

TEST_CASE("simplex survives long random update sequences")
{
    Rng rng(77);
    for (std::size_t m : {2u, 5u, 50u}) {
        Automaton a(m);
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i) {
            const std::size_t action = rng.below(m);
            if (rng.bernoulli(0.5))
                a.reward(action, rng.uniform());
            else
                a.penalize(action, 0.999 * rng.uniform());
            worst = std::max(worst, simplex_error(a));
            for (double p : a.probabilities())
                REQUIRE(p >= 0.0);
        }
        CHECK(worst <= 1e-9);
    }
}
