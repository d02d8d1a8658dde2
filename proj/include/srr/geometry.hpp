#pragma once

#include "srr/codebook.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"

#include <map>
#include <vector>

namespace srr {

// Columns up to scalar multiples: representatives normalized so the first
// nonzero coordinate is 1.
struct PointMultiset {
    std::map<std::vector<uint32_t>, int> multiplicity;
    int total = 0;
};

std::vector<uint32_t> normalize_projective(const Field& f, const std::vector<uint32_t>& v);

PointMultiset point_multiset(const StorageScheme& scheme);

// Canonical normals of all hyperplanes of the (k-1)-dimensional projective
// space over the scheme's field: (q^k - 1)/(q - 1) of them.
std::vector<std::vector<uint32_t>> enumerate_hyperplanes(const Field& f, int k);

// One bound per hyperplane h: the objects whose unit vectors avoid h can
// only be served by columns off h, so their demand sum is capped by mu times
// the number of such columns.
std::vector<HalfSpace> hyperplane_bounds(const StorageScheme& scheme);

// Linearized cheapest-capacity constraints: each object contributes either
// its first-tier line or its second-tier line, one half-space per pattern.
std::vector<HalfSpace> counting_bounds(const RecoveryCatalog& cat);

// Intersection of the hyperplane bounds (plus counting bounds on request)
// with the nonnegative orthant; vertices filled for k <= 3, flagged inexact.
RegionPolytope outer_polytope(const StorageScheme& scheme, bool include_counting,
                              const RecoveryCatalog* cat = nullptr);

// The same outer polytope restricted to lambda[d] = 0 outside dims.
RegionPolytope outer_polytope_slice(const StorageScheme& scheme, bool include_counting,
                                    const std::vector<int>& dims,
                                    const RecoveryCatalog* cat = nullptr);

}  // namespace srr
