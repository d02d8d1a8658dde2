#pragma once

#include "srr/rational.hpp"

#include <vector>

namespace srr::lp {

enum class Status { Optimal, Infeasible, Unbounded };

// min/max c.x  s.t.  eq_a x = eq_b,  ub_a x <= ub_b,  x >= 0.
struct Problem {
    int num_vars = 0;
    std::vector<std::vector<Rat>> eq_a;
    std::vector<Rat> eq_b;
    std::vector<std::vector<Rat>> ub_a;
    std::vector<Rat> ub_b;
    std::vector<Rat> objective;  // empty means feasibility only
    bool maximize = false;

    void add_eq(std::vector<Rat> a, Rat b);
    void add_ub(std::vector<Rat> a, Rat b);
};

struct Solution {
    Status status = Status::Infeasible;
    Rat objective = 0;
    std::vector<Rat> x;
    // When infeasible: multipliers y (eq rows) and z >= 0 (ub rows) with
    // y.A_eq + z.A_ub >= 0 componentwise and y.eq_b + z.ub_b < 0, i.e. an
    // exact certificate that no nonnegative solution exists.
    std::vector<Rat> farkas_eq;
    std::vector<Rat> farkas_ub;
};

// Exact rational simplex; Bland's rule makes every run deterministic and
// cycle-free.
Solution solve(const Problem& p);

}  // namespace srr::lp
