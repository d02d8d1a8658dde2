#include "srr/region.hpp"

#include "srr/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace srr {

namespace {

// Variables are the per-recovery-set weights of the active objects,
// flattened object by object. Objects whose demand is pinned to zero are
// excluded up front: their weights are forced to zero anyway, and dropping
// them shrinks the solve considerably.
struct VarMap {
    std::vector<int> offset;     // per object; -1 when inactive
    std::vector<int> active;     // active object indices
    int total = 0;

    VarMap(const RecoveryCatalog& cat, const std::vector<bool>& include) {
        offset.assign(cat.k(), -1);
        for (int i = 0; i < cat.k(); ++i) {
            if (!include[i]) continue;
            offset[i] = total;
            total += cat.count(i);
            active.push_back(i);
        }
    }
    static VarMap all(const RecoveryCatalog& cat) {
        return VarMap(cat, std::vector<bool>(cat.k(), true));
    }
    bool is_active(int object) const { return offset[object] >= 0; }
    int var(int object, int set_index) const { return offset[object] + set_index; }
};

// Per-server capacity rows shared by every region LP.
void add_capacity_rows(lp::Problem& p, const RecoveryCatalog& cat, const VarMap& vars) {
    const Rat& mu = cat.scheme->mu;
    for (int s = 0; s < cat.n(); ++s) {
        std::vector<Rat> row(vars.total, Rat(0));
        for (int i : vars.active)
            for (int j = 0; j < cat.count(i); ++j) {
                const auto& servers = cat.sets[i][j].servers;
                if (std::binary_search(servers.begin(), servers.end(), s))
                    row[vars.var(i, j)] = 1;
            }
        p.add_ub(std::move(row), mu);
    }
}

std::vector<Rat> demand_row(const RecoveryCatalog& cat, const VarMap& vars, int object) {
    std::vector<Rat> row(vars.total, Rat(0));
    for (int j = 0; j < cat.count(object); ++j) row[vars.var(object, j)] = 1;
    return row;
}

Allocation allocation_from_x(const RecoveryCatalog& cat, const VarMap& vars,
                             const std::vector<Rat>& x) {
    Allocation alloc;
    alloc.weights.resize(cat.k());
    for (int i = 0; i < cat.k(); ++i) {
        alloc.weights[i].assign(cat.count(i), Rat(0));
        if (vars.is_active(i))
            for (int j = 0; j < cat.count(i); ++j) alloc.weights[i][j] = x[vars.var(i, j)];
    }
    return alloc;
}

void check_demand(const RecoveryCatalog& cat, const DemandVector& demand) {
    if (demand.k() != cat.k()) throw ValidationError("demand dimension mismatch");
    for (const auto& l : demand.lambda)
        if (l < 0) throw ValidationError("demand rates must be nonnegative");
}

}  // namespace

AchieveResult is_achievable(const RecoveryCatalog& cat, const DemandVector& demand) {
    check_demand(cat, demand);
    std::vector<bool> include(cat.k());
    for (int i = 0; i < cat.k(); ++i) include[i] = demand.lambda[i] > 0;
    VarMap vars(cat, include);
    lp::Problem p;
    p.num_vars = vars.total;
    for (int i : vars.active) p.add_eq(demand_row(cat, vars, i), demand.lambda[i]);
    add_capacity_rows(p, cat, vars);

    auto sol = lp::solve(p);
    AchieveResult res;
    if (sol.status == lp::Status::Optimal) {
        res.achievable = true;
        res.allocation = allocation_from_x(cat, vars, sol.x);
        return res;
    }
    res.achievable = false;
    // Farkas multipliers give: for every feasible demand d,
    //   (-y).d <= sum_r z_r * mu.
    // Zero coefficients on the dropped objects keep the cut valid: their
    // columns meet the certificate through the nonnegative z alone.
    HalfSpace cut;
    cut.a.assign(cat.k(), Rat(0));
    for (size_t row = 0; row < vars.active.size(); ++row)
        cut.a[vars.active[row]] = -sol.farkas_eq[row];
    cut.b = 0;
    for (const auto& z : sol.farkas_ub) cut.b += z * cat.scheme->mu;
    res.cut = cut;
    return res;
}

Rat max_along(const RecoveryCatalog& cat, const std::vector<std::optional<Rat>>& fixed,
              int free_index) {
    if (int(fixed.size()) != cat.k()) throw ValidationError("fixed vector dimension mismatch");
    if (free_index < 0 || free_index >= cat.k())
        throw ValidationError("free index out of range");
    if (fixed[free_index].has_value())
        throw ValidationError("free coordinate must not be fixed");
    std::vector<bool> include(cat.k());
    for (int i = 0; i < cat.k(); ++i) {
        if (i == free_index) {
            include[i] = true;
            continue;
        }
        if (!fixed[i].has_value()) throw ValidationError("all non-free coordinates need values");
        if (*fixed[i] < 0) throw ValidationError("demand rates must be nonnegative");
        include[i] = *fixed[i] > 0;
    }
    VarMap vars(cat, include);
    lp::Problem p;
    p.num_vars = vars.total;
    for (int i : vars.active)
        if (i != free_index) p.add_eq(demand_row(cat, vars, i), *fixed[i]);
    add_capacity_rows(p, cat, vars);
    p.objective = demand_row(cat, vars, free_index);
    p.maximize = true;
    auto sol = lp::solve(p);
    if (sol.status == lp::Status::Infeasible)
        throw ValidationError("fixed demands are already infeasible");
    if (sol.status != lp::Status::Optimal) throw Error("region query did not converge");
    return sol.objective;
}

Rat support(const RecoveryCatalog& cat, const std::vector<Rat>& direction) {
    if (int(direction.size()) != cat.k())
        throw ValidationError("direction dimension mismatch");
    // Objects with nonpositive coefficients never help the objective and can
    // sit at zero demand, so their weights are dropped outright.
    std::vector<bool> include(cat.k());
    bool any = false;
    for (int i = 0; i < cat.k(); ++i) {
        include[i] = direction[i] > 0;
        any |= include[i];
    }
    if (!any) return 0;
    VarMap vars(cat, include);
    lp::Problem p;
    p.num_vars = vars.total;
    add_capacity_rows(p, cat, vars);
    p.objective.assign(vars.total, Rat(0));
    for (int i : vars.active)
        for (int j = 0; j < cat.count(i); ++j) p.objective[vars.var(i, j)] = direction[i];
    p.maximize = true;
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw Error("support query did not converge");
    return sol.objective;
}

std::pair<Allocation, Rat> min_cost_allocation(const RecoveryCatalog& cat,
                                               const DemandVector& demand) {
    check_demand(cat, demand);
    Rat total = std::accumulate(demand.lambda.begin(), demand.lambda.end(), Rat(0));
    std::vector<bool> include(cat.k());
    for (int i = 0; i < cat.k(); ++i) include[i] = demand.lambda[i] > 0;
    VarMap vars(cat, include);
    lp::Problem p;
    p.num_vars = vars.total;
    for (int i : vars.active) p.add_eq(demand_row(cat, vars, i), demand.lambda[i]);
    add_capacity_rows(p, cat, vars);
    p.objective.assign(vars.total, Rat(0));
    for (int i : vars.active)
        for (int j = 0; j < cat.count(i); ++j)
            p.objective[vars.var(i, j)] = cat.sets[i][j].size();
    p.maximize = false;
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw ValidationError("demand is not achievable; no allocation to cost");
    Allocation alloc = allocation_from_x(cat, vars, sol.x);
    // Zero demand is served by the empty allocation at unit cost by convention.
    Rat cost = total == 0 ? Rat(1) : Rat(sol.objective / total);
    return {std::move(alloc), cost};
}

bool allocation_is_valid(const RecoveryCatalog& cat, const DemandVector& demand,
                         const Allocation& alloc) {
    if (demand.k() != cat.k() || int(alloc.weights.size()) != cat.k()) return false;
    for (int i = 0; i < cat.k(); ++i) {
        if (int(alloc.weights[i].size()) != cat.count(i)) return false;
        Rat sum = 0;
        for (const auto& w : alloc.weights[i]) {
            if (w < 0) return false;
            sum += w;
        }
        if (sum != demand.lambda[i]) return false;
    }
    auto loads = server_loads(cat, alloc);
    for (const auto& load : loads)
        if (load > cat.scheme->mu) return false;
    return true;
}

std::vector<Rat> server_loads(const RecoveryCatalog& cat, const Allocation& alloc) {
    std::vector<Rat> loads(cat.n(), Rat(0));
    for (int i = 0; i < cat.k(); ++i)
        for (int j = 0; j < int(alloc.weights[i].size()); ++j) {
            const Rat& w = alloc.weights[i][j];
            if (w == 0) continue;
            for (int s : cat.sets[i][j].servers) loads[s] += w;
        }
    return loads;
}

// ---- Half-space utilities ----

std::optional<HalfSpace> canonical_halfspace(const HalfSpace& h) {
    Int lcm_den = 1;
    for (const auto& c : h.a) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(h.b));
    std::vector<Int> nums;
    nums.reserve(h.a.size() + 1);
    Int g = 0;
    bool all_zero = true;
    for (const auto& c : h.a) {
        Int v = numerator(c) * (lcm_den / denominator(c));
        if (v != 0) all_zero = false;
        g = boost::multiprecision::gcd(g, v);
        nums.push_back(v);
    }
    Int bv = numerator(h.b) * (lcm_den / denominator(h.b));
    if (all_zero) return std::nullopt;  // trivial or vacuous row, not a cut
    g = boost::multiprecision::gcd(g, bv);
    if (g == 0) g = 1;
    HalfSpace out;
    out.a.reserve(h.a.size());
    for (const auto& v : nums) out.a.push_back(Rat(v / g));
    out.b = Rat(bv / g);
    return out;
}

namespace {

bool halfspace_less(const HalfSpace& x, const HalfSpace& y) {
    if (x.a != y.a) return std::lexicographical_compare(x.a.begin(), x.a.end(),
                                                        y.a.begin(), y.a.end());
    return x.b < y.b;
}

}  // namespace

std::vector<HalfSpace> canonical_halfspace_set(std::vector<HalfSpace> hs) {
    std::map<std::vector<Rat>, Rat> tightest;
    for (const auto& h : hs) {
        auto canon = canonical_halfspace(h);
        if (!canon) continue;
        auto it = tightest.find(canon->a);
        if (it == tightest.end() || canon->b < it->second) tightest[canon->a] = canon->b;
    }
    std::vector<HalfSpace> out;
    out.reserve(tightest.size());
    for (auto& [a, b] : tightest) out.push_back({a, b});
    std::sort(out.begin(), out.end(), halfspace_less);
    return out;
}

namespace {

// Unique solution of a dim x dim rational system, if any.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m,
                                             std::vector<Rat> rhs) {
    const int dim = int(rhs.size());
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int r = col; r < dim; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        Rat inv = Rat(1) / m[col][col];
        for (auto& v : m[col]) v *= inv;
        rhs[col] *= inv;
        for (int r = 0; r < dim; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = 0; c < dim; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

int affine_rank(const std::vector<std::vector<Rat>>& points) {
    if (points.size() <= 1) return 0;
    const int dim = int(points[0].size());
    std::vector<std::vector<Rat>> diffs;
    for (size_t i = 1; i < points.size(); ++i) {
        std::vector<Rat> d(dim);
        for (int c = 0; c < dim; ++c) d[c] = points[i][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    int rank = 0;
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int r = rank; r < int(diffs.size()); ++r)
            if (diffs[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(diffs[rank], diffs[pivot]);
        for (int r = 0; r < int(diffs.size()); ++r) {
            if (r == rank || diffs[r][col] == 0) continue;
            Rat f = diffs[r][col] / diffs[rank][col];
            for (int c = 0; c < dim; ++c) diffs[r][c] -= f * diffs[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

bool hpolytope_contains(const std::vector<HalfSpace>& hs, const std::vector<Rat>& point) {
    for (const auto& h : hs) {
        Rat dot = 0;
        for (size_t c = 0; c < h.a.size(); ++c) dot += h.a[c] * point[c];
        if (dot > h.b) return false;
    }
    return true;
}

std::vector<std::vector<Rat>> enumerate_vertices(const std::vector<HalfSpace>& hs, int dim) {
    if (dim < 1 || dim > 3) throw ValidationError("vertex enumeration supports dim <= 3");
    std::vector<std::vector<Rat>> vertices;
    const int m = int(hs.size());
    std::vector<int> pick(dim);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == dim) {
            std::vector<std::vector<Rat>> mat(dim, std::vector<Rat>(dim));
            std::vector<Rat> rhs(dim);
            for (int i = 0; i < dim; ++i) {
                for (int c = 0; c < dim; ++c) mat[i][c] = hs[pick[i]].a[c];
                rhs[i] = hs[pick[i]].b;
            }
            auto sol = solve_square(mat, rhs);
            if (sol && hpolytope_contains(hs, *sol)) vertices.push_back(*sol);
            return;
        }
        for (int i = start; i < m; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

namespace {

// CCW order around the centroid, starting at the lexicographically smallest
// vertex; exact (quadrant + cross product), no floating point.
std::vector<std::vector<Rat>> ccw_order(std::vector<std::vector<Rat>> pts) {
    if (pts.size() < 3) return pts;
    Rat cx = 0, cy = 0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= int(pts.size());
    cy /= int(pts.size());
    auto half = [&](const std::vector<Rat>& p) {
        Rat dx = p[0] - cx, dy = p[1] - cy;
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;  // [0,pi) first
    };
    std::sort(pts.begin(), pts.end(), [&](const auto& p, const auto& q) {
        int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        Rat cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx);
        if (cross != 0) return cross > 0;
        return p < q;
    });
    auto smallest = std::min_element(pts.begin(), pts.end());
    std::rotate(pts.begin(), smallest, pts.end());
    return pts;
}

}  // namespace

RegionPolytope polytope_from_halfspaces(const std::vector<HalfSpace>& hs_in, int dim,
                                        bool exact) {
    auto hs = canonical_halfspace_set(hs_in);
    auto vertices = enumerate_vertices(hs, dim);
    RegionPolytope out;
    out.exact = exact;
    for (const auto& h : hs) {
        std::vector<std::vector<Rat>> tight;
        for (const auto& v : vertices) {
            Rat dot = 0;
            for (int c = 0; c < dim; ++c) dot += h.a[c] * v[c];
            if (dot == h.b) tight.push_back(v);
        }
        if (int(tight.size()) >= dim && affine_rank(tight) == dim - 1)
            out.halfspaces.push_back(h);
    }
    if (dim == 2)
        out.vertices = ccw_order(std::move(vertices));
    else
        out.vertices = std::move(vertices);
    return out;
}

Rat hpolytope_support(const std::vector<HalfSpace>& hs, const std::vector<Rat>& direction) {
    const int dim = int(direction.size());
    lp::Problem p;
    p.num_vars = dim;
    for (const auto& h : hs) {
        std::vector<Rat> row(h.a);
        row.resize(dim, Rat(0));
        p.add_ub(std::move(row), h.b);
    }
    p.objective = direction;
    p.maximize = true;
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw Error("h-polytope support query failed (empty or unbounded)");
    return sol.objective;
}

Rat polygon_area(const std::vector<std::vector<Rat>>& v) {
    Rat twice = 0;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % n];
        twice += p[0] * q[1] - q[0] * p[1];
    }
    return twice / 2;
}

namespace {

std::vector<Rat> embed(const std::vector<Rat>& slice_point, const std::vector<int>& dims,
                       int k) {
    std::vector<Rat> full(k, Rat(0));
    for (size_t i = 0; i < dims.size(); ++i) full[dims[i]] = slice_point[i];
    return full;
}

}  // namespace

RegionPolytope polytope_slice(const RecoveryCatalog& cat, const std::vector<int>& dims) {
    const int dim = int(dims.size());
    if (dim < 1 || dim > 3)
        throw ValidationError("polytope extraction supports 1 to 3 free coordinates");
    for (int d : dims)
        if (d < 0 || d >= cat.k()) throw ValidationError("slice coordinate out of range");

    std::vector<HalfSpace> hs;
    for (int i = 0; i < dim; ++i) {
        HalfSpace nonneg;
        nonneg.a.assign(dim, Rat(0));
        nonneg.a[i] = -1;
        nonneg.b = 0;
        hs.push_back(nonneg);
        std::vector<Rat> axis(cat.k(), Rat(0));
        axis[dims[i]] = 1;
        HalfSpace upper;
        upper.a.assign(dim, Rat(0));
        upper.a[i] = 1;
        upper.b = support(cat, axis);
        hs.push_back(upper);
    }
    {
        std::vector<Rat> ones(cat.k(), Rat(0));
        for (int d : dims) ones[d] = 1;
        HalfSpace sum;
        sum.a.assign(dim, Rat(1));
        sum.b = support(cat, ones);
        hs.push_back(sum);
    }

    std::map<std::vector<Rat>, bool> cache;
    const int kMaxCuts = 500;
    for (int round = 0; round <= kMaxCuts; ++round) {
        if (round == kMaxCuts) throw Error("polytope refinement did not converge");
        auto vertices = enumerate_vertices(canonical_halfspace_set(hs), dim);
        bool cut_added = false;
        for (const auto& v : vertices) {
            auto it = cache.find(v);
            if (it != cache.end() && it->second) continue;
            auto res = is_achievable(cat, DemandVector{embed(v, dims, cat.k())});
            cache[v] = res.achievable;
            if (res.achievable) continue;
            HalfSpace cut;
            cut.a.resize(dim);
            for (int i = 0; i < dim; ++i) cut.a[i] = res.cut->a[dims[i]];
            cut.b = res.cut->b;
            auto canon = canonical_halfspace(cut);
            if (!canon) throw Error("infeasibility certificate produced no usable cut");
            {
                Rat dot = 0;
                for (int i = 0; i < dim; ++i) dot += canon->a[i] * v[i];
                if (dot <= canon->b) throw Error("certificate cut fails to separate");
            }
            hs.push_back(*canon);
            cut_added = true;
            break;
        }
        if (!cut_added) break;
    }
    return polytope_from_halfspaces(hs, dim, /*exact=*/true);
}

RegionPolytope polytope(const RecoveryCatalog& cat) {
    if (cat.k() > 3)
        throw ValidationError("full polytope extraction is limited to k <= 3");
    std::vector<int> dims(cat.k());
    std::iota(dims.begin(), dims.end(), 0);
    return polytope_slice(cat, dims);
}

}  // namespace srr
