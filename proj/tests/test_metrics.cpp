#include "srr/metrics.hpp"

#include "fixtures.hpp"
#include "srr/errors.hpp"
#include "srr/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace srr;

namespace {

DemandDistribution box(std::vector<Rat> bounds) {
    DemandDistribution d;
    d.kind = DemandDistribution::Kind::Box;
    d.box_bounds = std::move(bounds);
    return d;
}

Allocation uniform_split(const RecoveryCatalog& cat, const std::vector<Rat>& lambda) {
    Allocation a;
    a.weights.resize(cat.k());
    for (int i = 0; i < cat.k(); ++i)
        a.weights[i].assign(cat.count(i), lambda[i] / cat.count(i));
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("counter rng is order-free and deterministic") {
    CounterRng a(42), b(42), c(43);
    CHECK(a.bits(7, 1) == b.bits(7, 1));
    CHECK(a.bits(7, 1) != c.bits(7, 1));
    CHECK(a.bits(7, 1) != a.bits(8, 1));
    CHECK(a.bits(7, 1) != a.bits(7, 2));
    for (uint64_t i = 0; i < 100; ++i) {
        double u = a.uniform(i);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("coverage of a contained box is exactly one") {
    auto cat = fixtures::catalog(fixtures::replication22());
    auto res = coverage(cat, box({2, 2}), 2000, 1);
    CHECK(res.estimate == 1.0);
}

TEST_CASE("coverage estimates match exact area ratios") {
    // Region area over box area; the estimate must sit within 3 standard
    // errors at 10^5 samples.
    struct Case {
        StorageScheme scheme;
        Rat box_side;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::replication22(), 4});
    cases.push_back({fixtures::mds42(), 4});
    for (auto& [scheme, side] : cases) {
        auto cat = fixtures::catalog(scheme);
        Rat area = polygon_area(polytope(cat).vertices);
        double exact = rat_to_double(area / (side * side));
        auto res = coverage(cat, box({side, side}), 100000, 7);
        double stderr3 = 3 * std::sqrt(exact * (1 - exact) / 100000.0);
        CHECK(std::abs(res.estimate - exact) <= stderr3);
        CHECK(res.ci_half_width > 0);
    }
}

TEST_CASE("coverage is monotone in the region") {
    // Same distribution and seed; a superset scheme cannot cover less.
    auto small = fixtures::catalog(fixtures::replication22());
    auto big = fixtures::catalog(make_replication(2, {3, 3}, 1));
    auto d = box({4, 4});
    auto cs = coverage(small, d, 20000, 11);
    auto cb = coverage(big, d, 20000, 11);
    CHECK(cb.estimate >= cs.estimate);
}

TEST_CASE("grid coverage is exact and deterministic") {
    DemandDistribution d;
    d.kind = DemandDistribution::Kind::Grid;
    d.grid = {{{1, 1}, 0.5}, {{3, 0}, 0.25}, {{0, 3}, 0.25}};
    auto rep = fixtures::catalog(fixtures::replication22());
    auto res = coverage(rep, d, 0, 99);
    CHECK(res.exact);
    CHECK(res.estimate == doctest::Approx(0.5));
    auto mds = fixtures::catalog(fixtures::mds42());  // pentagon misses (3,0)
    CHECK(coverage(mds, d, 0, 99).estimate == doctest::Approx(0.5));
}

TEST_CASE("skew-heavy grid favors the coded scheme") {
    auto dist = anticorrelated_grid(4.0, 9, 3.0, 0.5, 0.8);
    auto rep = fixtures::catalog(fixtures::replication22());
    auto mds = fixtures::catalog(fixtures::mds42());
    auto crep = coverage(rep, dist, 0, 1);
    auto cmds = coverage(mds, dist, 0, 1);
    CHECK(crep.exact);
    CHECK(cmds.estimate > crep.estimate);
}

TEST_CASE("cost of explicit allocations") {
    auto rep = fixtures::catalog(fixtures::replication22());
    auto alloc = uniform_split(rep, {1, 1});
    CHECK(cost_of(rep, alloc) == 1);

    auto mds = fixtures::catalog(fixtures::mds42());
    // 1 systematic + 1/2 over the coded pair + 1/2 systematic for b.
    Allocation manual;
    manual.weights = {{1, 0, 0, Rat(1, 2)}, {Rat(1, 2), 0, 0, 0}};
    CHECK(cost_of(mds, manual) == Rat(5, 4));

    Allocation overloaded;
    overloaded.weights = {{2, 0, 0, 0}, {0, 0, 0, 0}};
    CHECK_THROWS_AS(cost_of(mds, overloaded), ValidationError);
}

TEST_CASE("all-pairs allocation costs the set size") {
    auto mds = fixtures::catalog(fixtures::mds42());
    Allocation alloc;
    alloc.weights = {{0, Rat(1, 2), 0, 0}, {0, 0, Rat(1, 2), 0}};
    CHECK(cost_of(mds, alloc) == 2);
}

TEST_CASE("zero allocation costs one by convention") {
    auto rep = fixtures::catalog(fixtures::replication22());
    Allocation zero = uniform_split(rep, {0, 0});
    CHECK(cost_of(rep, zero) == 1);
}

TEST_CASE("normalized cost is at least one, exactly one iff all singletons") {
    std::mt19937 gen(73);
    auto mds = fixtures::catalog(fixtures::mds42());
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rat> lambda{Rat(int(gen() % 5), 4), Rat(int(gen() % 5), 4)};
        auto res = is_achievable(mds, DemandVector{lambda});
        if (!res.achievable) continue;
        Rat c = cost_of(mds, *res.allocation);
        CHECK(c >= 1);
        bool all_singleton = true;
        Rat total = 0;
        for (int i = 0; i < mds.k(); ++i)
            for (int j = 0; j < mds.count(i); ++j) {
                if (res.allocation->weights[i][j] == 0) continue;
                total += res.allocation->weights[i][j];
                all_singleton &= mds.sets[i][j].size() == 1;
            }
        if (total > 0) CHECK((c == 1) == all_singleton);
    }
}

TEST_CASE("minimum cost never rises when a systematic column is added") {
    std::mt19937 gen(79);
    auto base = fixtures::mds42();
    auto extended = base;
    extended.columns.push_back({1, 0});
    extended.n += 1;
    auto cat0 = fixtures::catalog(base);
    auto cat1 = fixtures::catalog(extended);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rat> lambda{Rat(int(gen() % 5), 4), Rat(int(gen() % 5), 4)};
        if (!is_achievable(cat0, DemandVector{lambda}).achievable) continue;
        Rat c0 = min_cost_allocation(cat0, DemandVector{lambda}).second;
        Rat c1 = min_cost_allocation(cat1, DemandVector{lambda}).second;
        CHECK(c1 <= c0);
    }
}

TEST_CASE("expected minimum cost over a skewed grid") {
    auto rep = fixtures::catalog(fixtures::replication22());
    auto dist = anticorrelated_grid(2.0, 5, 1.5, 0.25, 0.6);
    auto res = expected_min_cost(rep, dist, 0, 5);
    CHECK(res.covered_mass > 0.9);
    CHECK(res.expected_cost == doctest::Approx(1.0));
    auto mds = fixtures::catalog(fixtures::mds42());
    auto res2 = expected_min_cost(mds, dist, 0, 5);
    CHECK(res2.expected_cost >= 1.0);
}

TEST_CASE("truncated exponential sampling stays in range") {
    DemandDistribution d;
    d.kind = DemandDistribution::Kind::TruncatedExponential;
    d.exp_rates = {1.0, 2.0};
    d.exp_bounds = {4.0, 4.0};
    auto cat = fixtures::catalog(fixtures::mds42());
    auto res = coverage(cat, d, 5000, 31);
    CHECK(res.estimate > 0.3);  // most of the mass sits near the origin
    CHECK(res.estimate < 1.0);
    CHECK(coverage(cat, d, 5000, 31).estimate == res.estimate);
}

TEST_CASE("monte carlo runs are seed-deterministic") {
    auto cat = fixtures::catalog(fixtures::mds42());
    auto a = coverage(cat, box({4, 4}), 5000, 123);
    auto b = coverage(cat, box({4, 4}), 5000, 123);
    auto c = coverage(cat, box({4, 4}), 5000, 124);
    CHECK(a.estimate == b.estimate);
    CHECK(a.estimate != c.estimate);
}

TEST_CASE("distribution validation") {
    auto cat = fixtures::catalog(fixtures::replication22());
    CHECK_THROWS_AS(coverage(cat, box({2}), 2000, 1), ValidationError);
    CHECK_THROWS_AS(coverage(cat, box({2, 2}), 10, 1), ValidationError);
    DemandDistribution bad;
    bad.kind = DemandDistribution::Kind::Grid;
    bad.grid = {{{1, 1}, 0.7}};
    CHECK_THROWS_AS(coverage(cat, bad, 0, 1), ValidationError);
}

TEST_SUITE_END();
