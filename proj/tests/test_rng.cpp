#include "doctest.h"

#include <cmath>
#include <set>

#include "rng.hpp"

using namespace srsense;

TEST_CASE("identical keys give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.next_u64() == b.next_u64());
    Rng ga(7), gb(7);
    for (int i = 0; i < 1000; ++i)
        CHECK(ga.gaussian() == gb.gaussian());
}

TEST_CASE("seed path children are distinct streams") {
    const SeedPath root = SeedPath::root(1);
    std::set<std::uint64_t> keys;
    for (std::uint64_t i = 0; i < 1000; ++i)
        keys.insert(root.child(i).key());
    CHECK(keys.size() == 1000);
    // different roots diverge too
    CHECK(SeedPath::root(1).child(0).key() != SeedPath::root(2).child(0).key());
    // a child is not its parent
    CHECK(root.child(0).key() != root.key());
}

TEST_CASE("uniform01 stays in [0,1)") {
    Rng rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian moments") {
    Rng rng(11);
    const int n = 1000000;
    double mean = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        mean += g;
        m2 += g * g;
        m4 += g * g * g * g;
    }
    mean /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.03));
}
