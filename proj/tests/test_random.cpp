#include "doctest.h"

#include <cmath>
#include <vector>

#include "vmplace/random.hpp"

using vmp::Rng;

TEST_CASE("same seed gives the same stream")
{
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next() == b.next());
        CHECK(a.uniform() == b.uniform());
        CHECK(a.normal() == b.normal());
        CHECK(a.below(17) == b.below(17));
    }
}

TEST_CASE("uniform draws stay in range")
{
    Rng rng(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        const double o = rng.uniform_open();
        CHECK_UNARY(o > 0.0);
        CHECK_UNARY(o < 1.0);
        CHECK(rng.below(7) < 7u);
    }
}

TEST_CASE("below is close to uniform")
{
    Rng rng(5);
    std::vector<int> counts(6, 0);
    const int draws = 60000;
    for (int i = 0; i < draws; ++i)
        ++counts[rng.below(6)];
    for (int c : counts)
        CHECK(std::abs(c - draws / 6) < 400);
    CHECK_THROWS(rng.below(0));
}

TEST_CASE("normal deviates have unit variance")
{
    Rng rng(3);
    const int n = 100000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.015);
    CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.02);
}

TEST_CASE("hash64 is order sensitive and stable")
{
    CHECK(vmp::hash64({1, 2}) != vmp::hash64({2, 1}));
    CHECK(vmp::hash64({1, 2, 3}) == vmp::hash64({1, 2, 3}));
    CHECK(vmp::hash64({0}) != vmp::hash64({0, 0}));
    // Frozen so that seed derivation stays stable between releases.
    CHECK(vmp::mix64(0) == 0xe220a8397b1dcdafULL);
}
