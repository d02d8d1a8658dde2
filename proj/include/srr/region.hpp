#pragma once

#include "srr/lp.hpp"
#include "srr/rational.hpp"
#include "srr/recovery.hpp"

#include <optional>
#include <vector>

namespace srr {

struct DemandVector {
    std::vector<Rat> lambda;

    int k() const { return int(lambda.size()); }
};

// Split of each object's demand over its recovery sets; shaped exactly like
// the catalog (weights[i][j] belongs to catalog.sets[i][j]).
struct Allocation {
    std::vector<std::vector<Rat>> weights;
};

// a . lambda <= b
struct HalfSpace {
    std::vector<Rat> a;
    Rat b = 0;

    bool operator==(const HalfSpace&) const = default;
};

struct RegionPolytope {
    std::vector<HalfSpace> halfspaces;          // canonical, lex-sorted
    std::vector<std::vector<Rat>> vertices;     // filled when dim <= 3
    bool exact = false;
};

struct AchieveResult {
    bool achievable = false;
    std::optional<Allocation> allocation;
    // When not achievable: a valid inequality for the whole region that the
    // queried demand violates (from the LP infeasibility certificate).
    std::optional<HalfSpace> cut;
};

AchieveResult is_achievable(const RecoveryCatalog& cat, const DemandVector& demand);

// Largest feasible value of the free coordinate given the fixed ones.
Rat max_along(const RecoveryCatalog& cat, const std::vector<std::optional<Rat>>& fixed,
              int free_index);

// max direction . lambda over the region.
Rat support(const RecoveryCatalog& cat, const std::vector<Rat>& direction);

// Exact vertex/facet description; only for k <= 3.
RegionPolytope polytope(const RecoveryCatalog& cat);

// Slice of the region where every coordinate outside dims is pinned to zero;
// the result lives in the dims coordinates (|dims| <= 3).
RegionPolytope polytope_slice(const RecoveryCatalog& cat, const std::vector<int>& dims);

// Allocation minimizing total transfer sum |R| * weight subject to serving
// the demand; second element is the normalized cost (1 when demand is zero).
std::pair<Allocation, Rat> min_cost_allocation(const RecoveryCatalog& cat,
                                               const DemandVector& demand);

// Exact check of the per-object totals, per-server capacities, and
// nonnegativity. Returns false rather than throwing on a violation.
bool allocation_is_valid(const RecoveryCatalog& cat, const DemandVector& demand,
                         const Allocation& alloc);

std::vector<Rat> server_loads(const RecoveryCatalog& cat, const Allocation& alloc);

// ---- Half-space / polytope utilities (shared with the outer-bound module).

// Positive scaling to coprime integers; drops all-zero normals.
std::optional<HalfSpace> canonical_halfspace(const HalfSpace& h);

// Dedupes (keeping the tighter bound per normal) and lex-sorts.
std::vector<HalfSpace> canonical_halfspace_set(std::vector<HalfSpace> hs);

// All vertices of the H-polytope, dim <= 3.
std::vector<std::vector<Rat>> enumerate_vertices(const std::vector<HalfSpace>& hs, int dim);

// Canonical facet list (only half-spaces tight on a (dim-1)-dimensional set
// of vertices survive) plus the vertex list; 2D vertices come back in
// counter-clockwise hull order.
RegionPolytope polytope_from_halfspaces(const std::vector<HalfSpace>& hs, int dim, bool exact);

// max direction . x over an H-polytope contained in the nonnegative orthant.
Rat hpolytope_support(const std::vector<HalfSpace>& hs, const std::vector<Rat>& direction);

bool hpolytope_contains(const std::vector<HalfSpace>& hs, const std::vector<Rat>& point);

// Shoelace area of a counter-clockwise polygon.
Rat polygon_area(const std::vector<std::vector<Rat>>& ccw_vertices);

}  // namespace srr
