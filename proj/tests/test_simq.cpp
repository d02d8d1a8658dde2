#include "srr/simq.hpp"

#include "fixtures.hpp"
#include "srr/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace srr;

namespace {

std::shared_ptr<const RecoveryCatalog> shared_catalog(StorageScheme s, int max_size = 0) {
    return std::make_shared<RecoveryCatalog>(fixtures::catalog(std::move(s), max_size));
}

Allocation even_split(const RecoveryCatalog& cat, const std::vector<Rat>& lambda) {
    Allocation a;
    a.weights.resize(cat.k());
    for (int i = 0; i < cat.k(); ++i)
        a.weights[i].assign(cat.count(i), lambda[i] / cat.count(i));
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("simq");

TEST_CASE("stable replication run sits near the offered load") {
    SimConfig config;
    config.catalog = shared_catalog(fixtures::replication22());
    config.lambda = {rat_from_string("1.8"), rat_from_string("1.8")};
    config.allocation = even_split(*config.catalog, config.lambda);
    config.horizon = 1e5;
    config.seed = 11;
    auto report = simulate(config);
    for (const auto& s : report.servers) {
        CHECK(s.utilization == doctest::Approx(0.9).epsilon(0.03));
        CHECK(s.stable);
    }
    CHECK(report.completed_requests > 100000);
}

TEST_CASE("overloaded servers are flagged with positive drift") {
    SimConfig config;
    config.catalog = shared_catalog(fixtures::replication22());
    config.lambda = {rat_from_string("2.2"), 0};
    config.allocation = even_split(*config.catalog, config.lambda);
    config.horizon = 1e5;
    config.seed = 13;
    auto report = simulate(config);
    // Servers 0 and 1 hold the replicas of object a: offered load 1.1 each.
    for (int s : {0, 1}) {
        CHECK(report.servers[s].utilization > 1.0);
        CHECK_FALSE(report.servers[s].stable);
        CHECK(report.servers[s].drift_slope > 0);
    }
    for (int s : {2, 3}) CHECK(report.servers[s].stable);
}

TEST_CASE("nearly idle system responds in about one service time") {
    SimConfig config;
    config.catalog = shared_catalog(fixtures::replication22());
    config.lambda = {rat_from_string("0.01"), rat_from_string("0.01")};
    config.allocation = even_split(*config.catalog, config.lambda);
    config.horizon = 5e4;
    config.seed = 17;
    auto report = simulate(config);
    CHECK(report.mean_response_time == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("measured per-server rates converge to the allocation loads") {
    auto cat = shared_catalog(fixtures::mds42());
    std::vector<Rat> lambda{Rat(3, 2), Rat(1, 2)};
    auto res = is_achievable(*cat, DemandVector{lambda});
    REQUIRE(res.achievable);
    SimConfig config;
    config.catalog = cat;
    config.lambda = lambda;
    config.allocation = *res.allocation;
    config.horizon = 2e5;
    config.seed = 19;
    auto report = simulate(config);
    auto loads = server_loads(*cat, config.allocation);
    const double span = config.horizon * (1 - config.warmup_fraction);
    for (int s = 0; s < cat->n(); ++s) {
        double expected = rat_to_double(loads[s]);
        double se = std::sqrt(std::max(expected, 1e-9) / span);
        CHECK(std::abs(report.servers[s].subtask_arrival_rate - expected) <= 3 * se + 1e-6);
    }
}

TEST_CASE("scaled boundary points flip from stable to unstable") {
    auto cat = shared_catalog(make_simplex(3, 1), /*max_size=*/2);
    // Boundary direction (4/3, 4/3, 4/3) scaled by 0.9 and 1.1.
    for (bool stable_side : {true, false}) {
        Rat scale = stable_side ? Rat(9, 10) : Rat(11, 10);
        std::vector<Rat> lambda(3, Rat(4, 3) * scale);
        SimConfig config;
        config.catalog = cat;
        config.lambda = lambda;
        config.allocation = even_split(*cat, lambda);
        config.horizon = 1e5;
        config.seed = 23;
        auto report = simulate(config);
        if (stable_side) {
            for (const auto& s : report.servers) {
                CHECK(s.stable);
                CHECK(s.utilization <= 0.92);
            }
        } else {
            int overloaded = 0;
            for (const auto& s : report.servers)
                if (s.utilization > 1.0 && s.drift_slope > 0) ++overloaded;
            CHECK(overloaded >= 1);
        }
    }
}

TEST_CASE("identical seeds give identical event counts") {
    SimConfig config;
    config.catalog = shared_catalog(fixtures::replication22());
    config.lambda = {1, 1};
    config.allocation = even_split(*config.catalog, config.lambda);
    config.horizon = 1e4;
    config.seed = 29;
    auto a = simulate(config);
    auto b = simulate(config);
    CHECK(a.total_events == b.total_events);
    CHECK(a.mean_response_time == b.mean_response_time);
    config.seed = 30;
    CHECK(simulate(config).total_events != a.total_events);
}

TEST_CASE("allocation rows must sum to the demand") {
    SimConfig config;
    config.catalog = shared_catalog(fixtures::replication22());
    config.lambda = {1, 1};
    config.allocation = even_split(*config.catalog, {1, 2});
    CHECK_THROWS_AS(simulate(config), ValidationError);
}

TEST_SUITE_END();
