#include "srr/lp.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace srr;
using namespace srr::lp;

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& x) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

bool farkas_certificate_valid(const Problem& p, const Solution& sol) {
    // y.A_eq + z.A_ub >= 0 componentwise, z >= 0, y.b_eq + z.b_ub < 0.
    for (const auto& z : sol.farkas_ub)
        if (z < 0) return false;
    for (int j = 0; j < p.num_vars; ++j) {
        Rat col = 0;
        for (size_t r = 0; r < p.eq_a.size(); ++r) col += sol.farkas_eq[r] * p.eq_a[r][j];
        for (size_t r = 0; r < p.ub_a.size(); ++r) col += sol.farkas_ub[r] * p.ub_a[r][j];
        if (col < 0) return false;
    }
    Rat rhs = 0;
    for (size_t r = 0; r < p.eq_b.size(); ++r) rhs += sol.farkas_eq[r] * p.eq_b[r];
    for (size_t r = 0; r < p.ub_b.size(); ++r) rhs += sol.farkas_ub[r] * p.ub_b[r];
    return rhs < 0;
}

bool solution_feasible(const Problem& p, const std::vector<Rat>& x) {
    for (const auto& v : x)
        if (v < 0) return false;
    for (size_t r = 0; r < p.eq_a.size(); ++r)
        if (dot(p.eq_a[r], x) != p.eq_b[r]) return false;
    for (size_t r = 0; r < p.ub_a.size(); ++r)
        if (dot(p.ub_a[r], x) > p.ub_b[r]) return false;
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("simple maximization") {
    Problem p;
    p.num_vars = 2;
    p.add_ub({1, 0}, 1);
    p.add_ub({0, 1}, 2);
    p.objective = {1, 1};
    p.maximize = true;
    auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 3);
    CHECK(sol.x == std::vector<Rat>{1, 2});
}

TEST_CASE("equalities and fractional optimum") {
    // max x1 + x2 with x1 + 2 x2 = 2, x1 <= 1/2: optimum (1/2, 3/4).
    Problem p;
    p.num_vars = 2;
    p.add_eq({1, 2}, 2);
    p.add_ub({1, 0}, Rat(1, 2));
    p.objective = {1, 1};
    p.maximize = true;
    auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == Rat(5, 4));
    CHECK(solution_feasible(p, sol.x));
}

TEST_CASE("infeasible system yields a valid certificate") {
    Problem p;
    p.num_vars = 2;
    p.add_eq({1, 1}, 3);
    p.add_ub({1, 0}, 1);
    p.add_ub({0, 1}, 1);
    auto sol = solve(p);
    REQUIRE(sol.status == Status::Infeasible);
    CHECK(farkas_certificate_valid(p, sol));
}

TEST_CASE("unbounded detection") {
    Problem p;
    p.num_vars = 2;
    p.add_ub({1, -1}, 1);
    p.objective = {0, 1};
    p.maximize = true;
    CHECK(solve(p).status == Status::Unbounded);
}

TEST_CASE("degenerate and redundant rows") {
    Problem p;
    p.num_vars = 2;
    p.add_eq({1, 1}, 1);
    p.add_eq({2, 2}, 2);  // redundant copy
    p.add_ub({1, 0}, 1);
    p.objective = {1, 0};
    p.maximize = true;
    auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective == 1);
    CHECK(solution_feasible(p, sol.x));
}

TEST_CASE("zero right-hand sides stay feasible") {
    Problem p;
    p.num_vars = 3;
    p.add_eq({1, 1, 0}, 0);
    p.add_ub({1, 0, 1}, 1);
    auto sol = solve(p);
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.x == std::vector<Rat>({0, 0, 0}));
}

TEST_CASE("random instances: optimality and certificates cross-checked") {
    std::mt19937 gen(2024);
    for (int trial = 0; trial < 120; ++trial) {
        Problem p;
        p.num_vars = 2 + int(gen() % 3);
        int n_eq = int(gen() % 2), n_ub = 1 + int(gen() % 4);
        auto coeff = [&]() { return Rat(int(gen() % 7) - 3); };
        for (int r = 0; r < n_eq; ++r) {
            std::vector<Rat> row(p.num_vars);
            for (auto& v : row) v = coeff();
            p.add_eq(row, Rat(int(gen() % 5)));
        }
        for (int r = 0; r < n_ub; ++r) {
            std::vector<Rat> row(p.num_vars);
            for (auto& v : row) v = coeff();
            p.add_ub(row, Rat(int(gen() % 9) - 2));
        }
        p.objective.assign(p.num_vars, Rat(0));
        for (auto& v : p.objective) v = coeff();
        p.maximize = bool(gen() % 2);

        auto sol = solve(p);
        if (sol.status == Status::Infeasible) {
            CHECK(farkas_certificate_valid(p, sol));
        } else if (sol.status == Status::Optimal) {
            CHECK(solution_feasible(p, sol.x));
            // No feasible lattice probe may beat the reported optimum.
            std::vector<int> probe(p.num_vars, 0);
            std::function<void(int)> rec = [&](int idx) {
                if (idx == p.num_vars) {
                    std::vector<Rat> x(probe.begin(), probe.end());
                    if (!solution_feasible(p, x)) return;
                    Rat val = dot(p.objective, x);
                    if (p.maximize)
                        CHECK(val <= sol.objective);
                    else
                        CHECK(val >= sol.objective);
                    return;
                }
                for (int v = 0; v <= 3; ++v) {
                    probe[idx] = v;
                    rec(idx + 1);
                }
            };
            rec(0);
        }
    }
}

TEST_SUITE_END();
