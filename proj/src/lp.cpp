#include "srr/lp.hpp"

#include "srr/errors.hpp"

#include <algorithm>
#include <cassert>

namespace srr::lp {

void Problem::add_eq(std::vector<Rat> a, Rat b) {
    if (int(a.size()) != num_vars) throw ValidationError("lp row width mismatch");
    eq_a.push_back(std::move(a));
    eq_b.push_back(std::move(b));
}

void Problem::add_ub(std::vector<Rat> a, Rat b) {
    if (int(a.size()) != num_vars) throw ValidationError("lp row width mismatch");
    ub_a.push_back(std::move(a));
    ub_b.push_back(std::move(b));
}

namespace {

// Dense two-phase tableau. Columns: structural vars, one slack per ub row,
// one artificial per row that needs it; final column is the rhs. Row order:
// all eq rows first, then ub rows.
struct Tableau {
    int num_vars;
    int num_rows;
    int slack_begin, art_begin, total_cols;  // total_cols excludes rhs
    std::vector<std::vector<Rat>> rows;      // num_rows x (total_cols + 1)
    std::vector<Rat> cost;                   // current objective row (reduced costs)
    Rat cost_rhs = 0;                        // negative of current objective value
    std::vector<int> basis;                  // basic column per row
    std::vector<int> slack_col;              // per ub row, -1 for eq rows
    std::vector<int> art_col;                // per row, -1 if none
    std::vector<bool> flipped;               // row sign vs. the input row
    std::vector<bool> row_active;

    explicit Tableau(const Problem& p) {
        const int ne = int(p.eq_a.size()), nu = int(p.ub_a.size());
        num_vars = p.num_vars;
        num_rows = ne + nu;
        slack_begin = num_vars;
        art_begin = num_vars + nu;
        total_cols = art_begin + num_rows;  // reserve an artificial slot per row
        rows.assign(num_rows, std::vector<Rat>(total_cols + 1, Rat(0)));
        basis.assign(num_rows, -1);
        slack_col.assign(num_rows, -1);
        art_col.assign(num_rows, -1);
        flipped.assign(num_rows, false);
        row_active.assign(num_rows, true);

        for (int r = 0; r < num_rows; ++r) {
            const bool is_eq = r < ne;
            const auto& a = is_eq ? p.eq_a[r] : p.ub_a[r - ne];
            const Rat& b = is_eq ? p.eq_b[r] : p.ub_b[r - ne];
            for (int j = 0; j < num_vars; ++j) rows[r][j] = a[j];
            rows[r][total_cols] = b;
            if (!is_eq) {
                slack_col[r] = slack_begin + (r - ne);
                rows[r][slack_col[r]] = 1;
            }
            if (rows[r][total_cols] < 0) {
                flipped[r] = true;
                for (auto& v : rows[r]) v = -v;
            }
            if (!is_eq && !flipped[r]) {
                basis[r] = slack_col[r];  // slack gives a feasible start
            } else {
                art_col[r] = art_begin + r;
                rows[r][art_col[r]] = 1;
                basis[r] = art_col[r];
            }
        }
    }

    // Reduced-cost row for objective c over structural columns (rhs picks up
    // the pricing of the current basis).
    void load_objective(const std::vector<Rat>& c_struct, bool phase_one) {
        cost.assign(total_cols, Rat(0));
        cost_rhs = 0;
        if (phase_one) {
            for (int r = 0; r < num_rows; ++r)
                if (art_col[r] >= 0) cost[art_col[r]] = 1;
        } else {
            for (int j = 0; j < num_vars && j < int(c_struct.size()); ++j)
                cost[j] = c_struct[j];
        }
        for (int r = 0; r < num_rows; ++r) {
            if (!row_active[r]) continue;
            const Rat cb = cost[basis[r]];
            if (cb == 0) continue;
            for (int j = 0; j < total_cols; ++j)
                if (rows[r][j] != 0) cost[j] -= cb * rows[r][j];
            cost_rhs -= cb * rows[r][total_cols];
        }
    }

    void pivot(int row, int col) {
        auto& prow = rows[row];
        const Rat inv_p = Rat(1) / prow[col];
        if (inv_p != 1)
            for (auto& v : prow)
                if (v != 0) v *= inv_p;
        for (int r = 0; r < num_rows; ++r) {
            if (r == row || !row_active[r]) continue;
            const Rat factor = rows[r][col];
            if (factor == 0) continue;
            auto& target = rows[r];
            for (int j = 0; j <= total_cols; ++j)
                if (prow[j] != 0) target[j] -= factor * prow[j];
        }
        const Rat cfactor = cost[col];
        if (cfactor != 0) {
            for (int j = 0; j < total_cols; ++j)
                if (prow[j] != 0) cost[j] -= cfactor * prow[j];
            cost_rhs -= cfactor * prow[total_cols];
        }
        basis[row] = col;
    }

    // Entering column by most-negative reduced cost (ties to the lowest
    // index); after a long degenerate stretch the rule drops to Bland's
    // lowest-index choice, which cannot cycle. Leaving row: minimum ratio,
    // lowest basic index on ties. Deterministic throughout.
    Status run(bool allow_artificial_entering) {
        const int col_limit = allow_artificial_entering ? total_cols : art_begin;
        const long long degenerate_limit = 4LL * (num_rows + total_cols);
        long long degenerate_run = 0;
        bool bland = false;
        while (true) {
            int enter = -1;
            if (bland) {
                for (int j = 0; j < col_limit; ++j)
                    if (cost[j] < 0) {
                        enter = j;
                        break;
                    }
            } else {
                for (int j = 0; j < col_limit; ++j)
                    if (cost[j] < 0 && (enter < 0 || cost[j] < cost[enter])) enter = j;
            }
            if (enter < 0) return Status::Optimal;
            int leave = -1;
            Rat best_ratio = 0;
            for (int r = 0; r < num_rows; ++r) {
                if (!row_active[r] || rows[r][enter] <= 0) continue;
                Rat ratio = rows[r][total_cols] / rows[r][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return Status::Unbounded;
            if (best_ratio == 0) {
                if (++degenerate_run > degenerate_limit) bland = true;
            } else {
                degenerate_run = 0;
            }
            pivot(leave, enter);
        }
    }

    // After phase one, clear artificials out of the basis; a row that cannot
    // be pivoted out is redundant and gets deactivated.
    void drive_out_artificials() {
        for (int r = 0; r < num_rows; ++r) {
            if (!row_active[r] || basis[r] < art_begin) continue;
            int col = -1;
            for (int j = 0; j < art_begin; ++j)
                if (rows[r][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(r, col);
            } else {
                row_active[r] = false;
            }
        }
    }
};

}  // namespace

Solution solve(const Problem& p) {
    for (const auto& row : p.eq_a)
        if (int(row.size()) != p.num_vars) throw ValidationError("lp row width mismatch");
    for (const auto& row : p.ub_a)
        if (int(row.size()) != p.num_vars) throw ValidationError("lp row width mismatch");

    Tableau t(p);
    Solution sol;

    std::vector<Rat> phase2_cost(p.num_vars, Rat(0));
    for (int j = 0; j < int(p.objective.size()) && j < p.num_vars; ++j)
        phase2_cost[j] = p.maximize ? -p.objective[j] : p.objective[j];

    t.load_objective({}, /*phase_one=*/true);
    Status s1 = t.run(/*allow_artificial_entering=*/true);
    assert(s1 == Status::Optimal);  // phase-one objective is bounded below by 0
    (void)s1;
    const Rat infeasibility = -t.cost_rhs;
    if (infeasibility > 0) {
        sol.status = Status::Infeasible;
        // Simplex multipliers: y_r = c_init - reduced_cost at each row's
        // initial identity column; negate for the Farkas certificate, then
        // undo any row flips.
        const int ne = int(p.eq_a.size()), nu = int(p.ub_a.size());
        sol.farkas_eq.assign(ne, Rat(0));
        sol.farkas_ub.assign(nu, Rat(0));
        for (int r = 0; r < t.num_rows; ++r) {
            Rat y;
            if (t.art_col[r] >= 0)
                y = Rat(1) - t.cost[t.art_col[r]];
            else
                y = -t.cost[t.slack_col[r]];
            Rat cert = t.flipped[r] ? y : -y;
            if (r < ne)
                sol.farkas_eq[r] = cert;
            else
                sol.farkas_ub[r - ne] = cert;
        }
        return sol;
    }

    t.drive_out_artificials();
    t.load_objective(phase2_cost, /*phase_one=*/false);
    Status s2 = t.run(/*allow_artificial_entering=*/false);
    if (s2 == Status::Unbounded) {
        sol.status = Status::Unbounded;
        return sol;
    }
    sol.status = Status::Optimal;
    sol.x.assign(p.num_vars, Rat(0));
    for (int r = 0; r < t.num_rows; ++r) {
        if (!t.row_active[r]) continue;
        if (t.basis[r] < p.num_vars) sol.x[t.basis[r]] = t.rows[r][t.total_cols];
    }
    sol.objective = 0;
    for (int j = 0; j < int(p.objective.size()) && j < p.num_vars; ++j)
        sol.objective += p.objective[j] * sol.x[j];
    return sol;
}

}  // namespace srr::lp
