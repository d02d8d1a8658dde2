#include "srr/region.hpp"

#include "fixtures.hpp"
#include "srr/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace srr;

namespace {

DemandVector dv(std::vector<Rat> v) { return DemandVector{std::move(v)}; }

std::vector<std::vector<Rat>> sorted(std::vector<std::vector<Rat>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Random scheme with nonzero columns and rank k over GF(q).
StorageScheme random_scheme(std::mt19937& gen, int k, int n, uint32_t q, Rat mu = 1) {
    auto field = Field::prime(q);
    while (true) {
        std::vector<std::vector<uint32_t>> cols;
        for (int c = 0; c < n; ++c) {
            std::vector<uint32_t> col(k, 0);
            while (std::all_of(col.begin(), col.end(), [](uint32_t v) { return v == 0; }))
                for (auto& v : col) v = gen() % q;
            cols.push_back(col);
        }
        if (rank_of_columns(*field, cols) != k) continue;
        StorageScheme s;
        s.field = field;
        s.k = k;
        s.n = n;
        s.columns = std::move(cols);
        s.mu = mu;
        return s;
    }
}

std::vector<Rat> random_direction(std::mt19937& gen, int k) {
    std::vector<Rat> d(k);
    bool nonzero = false;
    for (auto& v : d) {
        v = Rat(int(gen() % 5), 1 + int(gen() % 3));
        if (v != 0) nonzero = true;
    }
    if (!nonzero) d[0] = 1;
    return d;
}

}  // namespace

TEST_SUITE_BEGIN("region");

TEST_CASE("replication square membership") {
    auto cat = fixtures::catalog(fixtures::replication22());
    CHECK(is_achievable(cat, dv({2, 2})).achievable);
    CHECK_FALSE(is_achievable(cat, dv({rat_from_string("2.01"), 0})).achievable);
    auto zero = is_achievable(cat, dv({0, 0}));
    CHECK(zero.achievable);
    for (const auto& row : zero.allocation->weights)
        for (const auto& w : row) CHECK(w == 0);
}

TEST_CASE("hybrid region boundary") {
    auto cat = fixtures::catalog(fixtures::hybrid_aabab());
    CHECK(is_achievable(cat, dv({Rat(3, 2), Rat(3, 2)})).achievable);
    CHECK_FALSE(is_achievable(cat, dv({Rat(8, 5), Rat(3, 2)})).achievable);
    auto poly = polytope(cat);
    // {lambda >= 0, lambda_b <= 2, lambda_a + lambda_b <= 3}
    std::vector<HalfSpace> expected = canonical_halfspace_set(
        {{{-1, 0}, 0}, {{0, -1}, 0}, {{0, 1}, 2}, {{1, 1}, 3}});
    CHECK(poly.halfspaces == expected);
    CHECK(sorted(poly.vertices) == sorted({{0, 0}, {3, 0}, {1, 2}, {0, 2}}));
}

TEST_CASE("every witness allocation is exactly valid") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 2 + int(gen() % 2);
        int n = k + int(gen() % (7 - k));
        auto cat = fixtures::catalog(random_scheme(gen, k, n, gen() % 2 ? 2 : 3));
        std::vector<Rat> lambda(k);
        for (auto& l : lambda) l = Rat(int(gen() % 9), 4);
        auto res = is_achievable(cat, dv(lambda));
        if (res.achievable) CHECK(allocation_is_valid(cat, dv(lambda), *res.allocation));
    }
}

TEST_CASE("max_along canonical values") {
    auto mds = fixtures::catalog(fixtures::mds42());
    CHECK(max_along(mds, {std::nullopt, Rat(0)}, 0) == Rat(5, 2));
    auto simplex = fixtures::catalog(make_simplex(3, 1));
    CHECK(max_along(simplex, {std::nullopt, Rat(0), Rat(0)}, 0) == 4);
    auto rm = fixtures::catalog(make_rm1(4, false, 1));
    CHECK(max_along(rm, {Rat(0), Rat(0), Rat(0), std::nullopt}, 3) == Rat(10, 3));
    CHECK_THROWS_AS(max_along(mds, {std::nullopt, Rat(100)}, 0), ValidationError);
}

TEST_CASE("support values") {
    auto simplex = fixtures::catalog(make_simplex(3, 1));
    CHECK(support(simplex, {1, 1, 1}) == 4);
    auto mds82 = fixtures::catalog(make_mds(8, 2, fixtures::gf(11), false, 1));
    CHECK(support(mds82, {1, 1}) == 4);
    CHECK(support(mds82, {0, 0}) == 0);
}

TEST_CASE("pentagon polytope for the 4-server mds scheme") {
    auto cat = fixtures::catalog(fixtures::mds42());
    auto poly = polytope(cat);
    CHECK(poly.exact);
    CHECK(sorted(poly.vertices) ==
          sorted({{0, 0}, {Rat(5, 2), 0}, {2, 1}, {1, 2}, {0, Rat(5, 2)}}));
    std::vector<HalfSpace> expected = canonical_halfspace_set(
        {{{-1, 0}, 0}, {{0, -1}, 0}, {{2, 1}, 5}, {{1, 1}, 3}, {{1, 2}, 5}});
    CHECK(poly.halfspaces == expected);
    CHECK(polygon_area(poly.vertices) == 4);
}

TEST_CASE("replication square polytope") {
    auto poly = polytope(fixtures::catalog(fixtures::replication22()));
    CHECK(sorted(poly.vertices) == sorted({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
    CHECK(polygon_area(poly.vertices) == 4);
}

TEST_CASE("simplex k=3 polytope is the plain sum bound") {
    auto poly = polytope(fixtures::catalog(make_simplex(3, 1)));
    std::vector<HalfSpace> expected = canonical_halfspace_set(
        {{{-1, 0, 0}, 0}, {{0, -1, 0}, 0}, {{0, 0, -1}, 0}, {{1, 1, 1}, 4}});
    CHECK(poly.halfspaces == expected);
    CHECK(sorted(poly.vertices) ==
          sorted({{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}}));
}

TEST_CASE("hybrid 3+3+2 dominates the other 8-server layouts by area") {
    auto area = [](const StorageScheme& s) {
        return polygon_area(polytope(fixtures::catalog(s)).vertices);
    };
    Rat rep = area(make_replication(2, {4, 4}, 1));
    Rat nonsys = area(make_mds(8, 2, fixtures::gf(11), false, 1));
    Rat sys = area(make_mds(8, 2, fixtures::gf(11), true, 1));
    Rat hybrid = area(fixtures::hybrid332());
    CHECK(rep == 16);
    CHECK(nonsys == 8);
    CHECK(sys == 12);
    CHECK(hybrid == Rat(39, 2));
    CHECK(hybrid > rep);
    CHECK(hybrid > nonsys);
    CHECK(hybrid > sys);
}

TEST_CASE("rm slice polytope") {
    auto cat = fixtures::catalog(make_rm1(4, false, 1));
    auto poly = polytope_slice(cat, {0, 3});
    CHECK(sorted(poly.vertices) == sorted({{0, 0}, {4, 0}, {2, 2}, {0, Rat(10, 3)}}));
}

TEST_CASE("min cost allocations") {
    auto rep = fixtures::catalog(fixtures::replication22());
    for (auto lambda :
         std::vector<std::vector<Rat>>{{1, 1}, {2, 0}, {Rat(1, 2), Rat(3, 2)}}) {
        auto [alloc, cost] = min_cost_allocation(rep, dv(lambda));
        CHECK(cost == 1);
        CHECK(allocation_is_valid(rep, dv(lambda), alloc));
    }
    auto mds = fixtures::catalog(fixtures::mds42());
    auto [alloc, cost] = min_cost_allocation(mds, dv({Rat(3, 2), Rat(1, 2)}));
    CHECK(cost == Rat(5, 4));
    CHECK(allocation_is_valid(mds, dv({Rat(3, 2), Rat(1, 2)}), alloc));
    CHECK(min_cost_allocation(mds, dv({0, 0})).second == 1);
    CHECK_THROWS_AS(min_cost_allocation(mds, dv({10, 10})), ValidationError);
}

TEST_CASE("downward closure and convexity") {
    std::mt19937 gen(23);
    int done = 0;
    while (done < 50) {
        int k = 2 + int(gen() % 2);
        int n = k + int(gen() % (7 - k));
        auto cat = fixtures::catalog(random_scheme(gen, k, n, gen() % 2 ? 2 : 3));
        std::vector<Rat> a(k), b(k);
        for (auto& l : a) l = Rat(int(gen() % 8), 4);
        for (auto& l : b) l = Rat(int(gen() % 8), 4);
        auto ra = is_achievable(cat, dv(a));
        auto rb = is_achievable(cat, dv(b));
        if (!ra.achievable || !rb.achievable) continue;
        ++done;
        // Downward closure: shrink a componentwise.
        std::vector<Rat> smaller(k);
        for (int i = 0; i < k; ++i) smaller[i] = a[i] * Rat(int(gen() % 5), 8);
        CHECK(is_achievable(cat, dv(smaller)).achievable);
        // Convexity: the midpoint is achievable via the averaged witness.
        std::vector<Rat> mid(k);
        for (int i = 0; i < k; ++i) mid[i] = (a[i] + b[i]) / 2;
        CHECK(is_achievable(cat, dv(mid)).achievable);
        Allocation avg;
        avg.weights.resize(k);
        for (int i = 0; i < k; ++i) {
            avg.weights[i].resize(cat.count(i));
            for (int j = 0; j < cat.count(i); ++j)
                avg.weights[i][j] =
                    (ra.allocation->weights[i][j] + rb.allocation->weights[i][j]) / 2;
        }
        CHECK(allocation_is_valid(cat, dv(mid), avg));
    }
}

TEST_CASE("mu scaling scales the region") {
    std::mt19937 gen(29);
    for (int trial = 0; trial < 12; ++trial) {
        int k = 2 + int(gen() % 2);
        int n = k + int(gen() % 4);
        Rat scale(1 + int(gen() % 6), 1 + int(gen() % 3));
        auto base = random_scheme(gen, k, n, 3);
        auto scaled = base;
        scaled.mu = base.mu * scale;
        auto cat0 = fixtures::catalog(base);
        auto cat1 = fixtures::catalog(scaled);
        for (int d = 0; d < 16; ++d) {
            auto dir = random_direction(gen, k);
            CHECK(support(cat1, dir) == scale * support(cat0, dir));
        }
    }
}

TEST_CASE("column permutation and scaling leave the region unchanged") {
    std::mt19937 gen(31);
    for (int trial = 0; trial < 12; ++trial) {
        auto base = random_scheme(gen, 2, 2 + int(gen() % 4), 5);
        auto tweaked = base;
        std::shuffle(tweaked.columns.begin(), tweaked.columns.end(), gen);
        for (auto& col : tweaked.columns) {
            uint32_t sc = 1 + gen() % 4;
            for (auto& v : col) v = base.field->mul(v, sc);
        }
        auto cat0 = fixtures::catalog(base);
        auto cat1 = fixtures::catalog(tweaked);
        for (int d = 0; d < 8; ++d) {
            auto dir = random_direction(gen, 2);
            CHECK(support(cat0, dir) == support(cat1, dir));
        }
    }
}

TEST_CASE("appending a server never shrinks the region") {
    std::mt19937 gen(37);
    for (int trial = 0; trial < 12; ++trial) {
        auto base = random_scheme(gen, 2, 2 + int(gen() % 4), 3);
        auto extended = base;
        std::vector<uint32_t> col(2, 0);
        while (col[0] == 0 && col[1] == 0)
            for (auto& v : col) v = gen() % 3;
        extended.columns.push_back(col);
        extended.n += 1;
        auto cat0 = fixtures::catalog(base);
        auto cat1 = fixtures::catalog(extended);
        for (int d = 0; d < 8; ++d) {
            auto dir = random_direction(gen, 2);
            CHECK(support(cat1, dir) >= support(cat0, dir));
        }
    }
}

TEST_CASE("polytope membership agrees with the oracle on a dense grid") {
    std::mt19937 gen(41);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + int(gen() % 4);
        auto cat = fixtures::catalog(random_scheme(gen, 2, n, gen() % 2 ? 2 : 3));
        auto poly = polytope(cat);
        Rat max_a = support(cat, {1, 0});
        Rat max_b = support(cat, {0, 1});
        for (Rat a = 0; a <= max_a + 1; a += Rat(1, 8))
            for (Rat b = 0; b <= max_b + 1; b += Rat(1, 8)) {
                bool in_poly = hpolytope_contains(poly.halfspaces, {a, b});
                bool in_region = is_achievable(cat, dv({a, b})).achievable;
                CHECK(in_poly == in_region);
            }
    }
}

TEST_CASE("3d polytopes agree with the oracle") {
    std::mt19937 gen(43);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 3 + int(gen() % 4);
        auto cat = fixtures::catalog(random_scheme(gen, 3, n, gen() % 2 ? 2 : 3));
        auto poly = polytope(cat);
        // Every vertex is achievable and the support functions coincide.
        for (const auto& v : poly.vertices)
            CHECK(is_achievable(cat, dv(v)).achievable);
        for (int d = 0; d < 20; ++d) {
            std::vector<Rat> dir(3);
            for (auto& c : dir) c = Rat(int(gen() % 5), 1 + int(gen() % 2));
            if (dir == std::vector<Rat>{0, 0, 0}) dir[0] = 1;
            CHECK(hpolytope_support(poly.halfspaces, dir) == support(cat, dir));
        }
        // Interior and exterior probes against the facet description.
        for (int probe = 0; probe < 24; ++probe) {
            std::vector<Rat> pt(3);
            for (auto& c : pt) c = Rat(int(gen() % 12), 4);
            CHECK(hpolytope_contains(poly.halfspaces, pt) ==
                  is_achievable(cat, dv(pt)).achievable);
        }
    }
}

TEST_CASE("lrc slice polytope stays inside the grouped structure") {
    auto cat = fixtures::catalog(fixtures::lrc12_4());
    auto poly = polytope_slice(cat, {0, 1});
    // Objects a and b live in a single (4,2) group; with four extra globals
    // the slice must still be a bounded polygon containing (1,1).
    CHECK(poly.exact);
    CHECK(hpolytope_contains(poly.halfspaces, {1, 1}));
    for (const auto& v : poly.vertices) {
        std::vector<Rat> full{v[0], v[1], 0, 0};
        CHECK(is_achievable(cat, dv(full)).achievable);
    }
    CHECK(hpolytope_support(poly.halfspaces, {1, 0}) ==
          support(cat, {1, 0, 0, 0}));
}

TEST_CASE("polytope vertices satisfy enough halfspaces with equality") {
    auto poly = polytope(fixtures::catalog(fixtures::mds42()));
    for (const auto& v : poly.vertices) {
        int tight = 0;
        for (const auto& h : poly.halfspaces) {
            Rat dot = 0;
            for (size_t c = 0; c < h.a.size(); ++c) dot += h.a[c] * v[c];
            REQUIRE(dot <= h.b);
            if (dot == h.b) ++tight;
        }
        CHECK(tight >= 2);
    }
}

TEST_CASE("extension-field schemes run through the whole pipeline") {
    // Over GF(4): a, b, a+b, a+xb with x the generator; every pair of the
    // non-unit columns is independent, so this is a [4,2] MDS layout.
    FieldSpec gf4{2, 2, {1, 1, 1}};
    auto scheme = make_explicit(gf4, 2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}, 1);
    CHECK(is_mds(scheme));
    auto cat = fixtures::catalog(scheme);
    CHECK(cat.count(0) == 4);
    auto poly = polytope(cat);
    CHECK(sorted(poly.vertices) ==
          sorted({{0, 0}, {Rat(5, 2), 0}, {2, 1}, {1, 2}, {0, Rat(5, 2)}}));
    for (Rat a = 0; a <= 3; a += Rat(1, 4))
        for (Rat b = 0; b <= 3; b += Rat(1, 4))
            CHECK(hpolytope_contains(poly.halfspaces, {a, b}) ==
                  is_achievable(cat, dv({a, b})).achievable);
}

TEST_CASE("dimension checks") {
    auto cat = fixtures::catalog(make_rm1(4, false, 1));
    CHECK_THROWS_AS(polytope(cat), ValidationError);
    CHECK_THROWS_AS(is_achievable(cat, dv({1, 1})), ValidationError);
    CHECK_THROWS_AS(support(cat, {1, 1}), ValidationError);
}

TEST_SUITE_END();
