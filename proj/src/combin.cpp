#include "srr/combin.hpp"

#include "srr/errors.hpp"
#include "srr/lp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace srr {

int RecoveryHypergraph::degree(int vertex) const {
    int d = 0;
    for (const auto& e : edges)
        if (std::binary_search(e.vertices.begin(), e.vertices.end(), vertex)) ++d;
    return d;
}

RecoveryHypergraph build_graph(const StorageScheme& scheme, const RecoveryCatalog& cat,
                               RecoveryHypergraph::Mode mode) {
    scheme.validate();
    if (cat.scheme.get() != &scheme && !(cat.scheme->columns == scheme.columns))
        throw ValidationError("catalog does not belong to the scheme");

    RecoveryHypergraph g;
    g.mode = mode;
    g.num_servers = scheme.n;
    g.k = scheme.k;
    g.mu = scheme.mu;

    const bool pairs_only = mode == RecoveryHypergraph::Mode::PairsOnly;
    const int dummies_per_column =
        (!pairs_only && is_mds(scheme)) ? scheme.k - 1 : 1;

    // Dummy vertices exist only for columns that actually carry a size-one
    // recovery set.
    std::vector<int> dummy_base(scheme.n, -1);
    int next_vertex = scheme.n;
    for (int i = 0; i < cat.k(); ++i)
        for (const auto& rs : cat.sets[i])
            if (rs.size() == 1 && dummy_base[rs.servers[0]] < 0) {
                dummy_base[rs.servers[0]] = next_vertex;
                next_vertex += dummies_per_column;
            }
    g.num_vertices = next_vertex;
    for (int c = 0; c < scheme.n; ++c)
        if (dummy_base[c] >= 0)
            for (int d = 0; d < dummies_per_column; ++d) g.dummy_owner.push_back(c);

    for (int i = 0; i < cat.k(); ++i)
        for (const auto& rs : cat.sets[i]) {
            if (pairs_only && rs.size() > 2) continue;
            Hyperedge e;
            e.label = i;
            e.vertices = rs.servers;
            if (rs.size() == 1) {
                for (int d = 0; d < dummies_per_column; ++d)
                    e.vertices.push_back(dummy_base[rs.servers[0]] + d);
                std::sort(e.vertices.begin(), e.vertices.end());
            }
            g.edges.push_back(std::move(e));
        }
    return g;
}

namespace {

lp::Problem matching_lp(const RecoveryHypergraph& g, const Rat& vertex_cap) {
    lp::Problem p;
    p.num_vars = int(g.edges.size());
    for (int v = 0; v < g.num_vertices; ++v) {
        std::vector<Rat> row(p.num_vars, Rat(0));
        bool touched = false;
        for (int e = 0; e < p.num_vars; ++e)
            if (std::binary_search(g.edges[e].vertices.begin(), g.edges[e].vertices.end(),
                                   v)) {
                row[e] = 1;
                touched = true;
            }
        if (touched) p.add_ub(std::move(row), vertex_cap);
    }
    return p;
}

constexpr int kExactSearchVertexCap = 24;

}  // namespace

Rat fractional_matching_number(const RecoveryHypergraph& g) {
    if (g.edges.empty()) return 0;
    lp::Problem p = matching_lp(g, Rat(1));
    p.objective.assign(p.num_vars, Rat(1));
    p.maximize = true;
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw Error("fractional matching lp failed");
    return sol.objective;
}

int matching_number(const RecoveryHypergraph& g) {
    if (g.num_vertices > kExactSearchVertexCap)
        throw BudgetError("exact matching search capped at 24 vertices");
    const int m = int(g.edges.size());
    int best = 0;
    std::vector<bool> used(g.num_vertices, false);
    std::function<void(int, int)> rec = [&](int idx, int count) {
        best = std::max(best, count);
        if (idx == m || count + (m - idx) <= best) return;
        const auto& e = g.edges[idx].vertices;
        bool free = std::none_of(e.begin(), e.end(), [&](int v) { return used[v]; });
        if (free) {
            for (int v : e) used[v] = true;
            rec(idx + 1, count + 1);
            for (int v : e) used[v] = false;
        }
        rec(idx + 1, count);
    };
    rec(0, 0);
    return best;
}

int vertex_cover_number(const RecoveryHypergraph& g) {
    if (g.num_vertices > kExactSearchVertexCap)
        throw BudgetError("exact vertex cover search capped at 24 vertices");
    int best = g.num_vertices;
    std::vector<bool> in_cover(g.num_vertices, false);
    std::function<void(int)> rec = [&](int size) {
        if (size >= best) return;
        const Hyperedge* uncovered = nullptr;
        for (const auto& e : g.edges) {
            if (std::none_of(e.vertices.begin(), e.vertices.end(),
                             [&](int v) { return in_cover[v]; })) {
                uncovered = &e;
                break;
            }
        }
        if (!uncovered) {
            best = size;
            return;
        }
        for (int v : uncovered->vertices) {
            in_cover[v] = true;
            rec(size + 1);
            in_cover[v] = false;
        }
    };
    rec(0);
    return best;
}

bool is_bipartite(const RecoveryHypergraph& g) {
    for (const auto& e : g.edges)
        if (e.vertices.size() > 2)
            throw ValidationError("bipartite test is defined for pairs-only graphs");
    std::vector<int> color(g.num_vertices, -1);
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (const auto& e : g.edges) {
        if (e.vertices.size() < 2) continue;
        adj[e.vertices[0]].push_back(e.vertices[1]);
        adj[e.vertices[1]].push_back(e.vertices[0]);
    }
    for (int start = 0; start < g.num_vertices; ++start) {
        if (color[start] >= 0) continue;
        color[start] = 0;
        std::vector<int> queue{start};
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int w : adj[v]) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool achievable_via_matching(const RecoveryHypergraph& g, const DemandVector& demand) {
    if (demand.k() != g.k) throw ValidationError("demand dimension mismatch");
    for (const auto& l : demand.lambda)
        if (l < 0) throw ValidationError("demand rates must be nonnegative");
    lp::Problem p = matching_lp(g, g.mu);
    for (int i = 0; i < g.k; ++i) {
        std::vector<Rat> row(p.num_vars, Rat(0));
        for (int e = 0; e < p.num_vars; ++e)
            if (g.edges[e].label == i) row[e] = 1;
        p.add_eq(std::move(row), demand.lambda[i]);
    }
    return lp::solve(p).status == lp::Status::Optimal;
}

namespace {

struct IntegralSearch {
    const RecoveryCatalog& cat;
    std::vector<long long> capacity;  // remaining per server
    std::vector<std::vector<long long>> counts;
    const std::vector<long long>& lambda;
    long long budget;
    long long nodes = 0;

    bool fits(const RecoverySet& rs, long long units) const {
        for (int s : rs.servers)
            if (capacity[s] < units) return false;
        return true;
    }

    void apply(const RecoverySet& rs, long long units) {
        for (int s : rs.servers) capacity[s] -= units;
    }

    bool assign(int object, int set_index, long long remaining) {
        if (++nodes > budget)
            throw BudgetError("integral allocation search exceeded its node budget");
        if (remaining == 0) return next_object(object + 1);
        if (set_index >= cat.count(object)) return false;
        const auto& rs = cat.sets[object][set_index];
        long long cap = remaining;
        for (int s : rs.servers) cap = std::min(cap, capacity[s]);
        // Greedy-first: push as much as possible into the earliest sets, then
        // back off; the first witness found matches the natural hand answer.
        for (long long units = cap; units >= 0; --units) {
            if (units > 0) apply(rs, units);
            counts[object][set_index] = units;
            if (assign(object, set_index + 1, remaining - units)) return true;
            counts[object][set_index] = 0;
            if (units > 0)
                for (int s : rs.servers) capacity[s] += units;
        }
        return false;
    }

    bool next_object(int object) {
        if (object == cat.k()) return true;
        return assign(object, 0, lambda[object]);
    }
};

}  // namespace

IntegralResult integral_achievable(const RecoveryCatalog& cat, long long mu,
                                   const std::vector<long long>& lambda,
                                   long long node_budget) {
    if (mu < 1) throw ValidationError("integral queries need a positive integer mu");
    if (int(lambda.size()) != cat.k()) throw ValidationError("demand dimension mismatch");
    for (long long l : lambda)
        if (l < 0) throw ValidationError("demand must be nonnegative");

    IntegralSearch search{cat,
                          std::vector<long long>(cat.n(), mu),
                          {},
                          lambda,
                          node_budget};
    search.counts.resize(cat.k());
    for (int i = 0; i < cat.k(); ++i) search.counts[i].assign(cat.count(i), 0);

    IntegralResult result;
    result.achievable = search.next_object(0);
    if (result.achievable) {
        Allocation alloc;
        alloc.weights.resize(cat.k());
        for (int i = 0; i < cat.k(); ++i) {
            alloc.weights[i].reserve(cat.count(i));
            for (long long c : search.counts[i]) alloc.weights[i].push_back(Rat(c));
        }
        result.allocation = std::move(alloc);
    }
    return result;
}

bool is_batch_code(const RecoveryCatalog& cat, long long mu, long long t,
                   long long node_budget) {
    if (t < 1) throw ValidationError("batch parameter t must be >= 1");
    // Compositions of t into k nonnegative parts; integral regions are
    // downward closed, so the sum-t frontier decides everything below it.
    std::vector<long long> demand(cat.k(), 0);
    std::function<bool(int, long long)> rec = [&](int idx, long long rest) -> bool {
        if (idx == cat.k() - 1) {
            demand[idx] = rest;
            return integral_achievable(cat, mu, demand, node_budget).achievable;
        }
        for (long long take = rest; take >= 0; --take) {
            demand[idx] = take;
            if (!rec(idx + 1, rest - take)) return false;
        }
        return true;
    };
    return rec(0, t);
}

bool is_pir_code(const RecoveryCatalog& cat, long long mu, long long t,
                 long long node_budget) {
    if (t < 1) throw ValidationError("pir parameter t must be >= 1");
    for (int i = 0; i < cat.k(); ++i) {
        std::vector<long long> demand(cat.k(), 0);
        demand[i] = t;
        if (!integral_achievable(cat, mu, demand, node_budget).achievable) return false;
    }
    return true;
}

}  // namespace srr
