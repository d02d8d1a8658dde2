#include "srr/geometry.hpp"

#include "srr/errors.hpp"

#include <algorithm>

namespace srr {

namespace {

constexpr uint64_t kEnumerationCap = 1ull << 20;

uint64_t pow_u64(uint64_t base, int exp) {
    uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

std::vector<uint32_t> vector_from_index(uint64_t idx, uint32_t q, int k) {
    std::vector<uint32_t> v(k);
    for (int i = 0; i < k; ++i) {
        v[i] = uint32_t(idx % q);
        idx /= q;
    }
    return v;
}

uint32_t dot(const Field& f, const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    uint32_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

}  // namespace

std::vector<uint32_t> normalize_projective(const Field& f, const std::vector<uint32_t>& v) {
    for (uint32_t c : v) {
        if (c == 0) continue;
        if (c == 1) return v;
        uint32_t inv = f.inv(c);
        std::vector<uint32_t> out(v.size());
        for (size_t i = 0; i < v.size(); ++i) out[i] = f.mul(v[i], inv);
        return out;
    }
    throw ValidationError("zero vector has no projective representative");
}

PointMultiset point_multiset(const StorageScheme& scheme) {
    scheme.validate();
    PointMultiset ms;
    for (const auto& col : scheme.columns) {
        ++ms.multiplicity[normalize_projective(*scheme.field, col)];
        ++ms.total;
    }
    return ms;
}

std::vector<std::vector<uint32_t>> enumerate_hyperplanes(const Field& f, int k) {
    const uint64_t total = pow_u64(f.q(), k);
    if (total > kEnumerationCap)
        throw BudgetError("hyperplane enumeration capped at q^k <= 2^20");
    std::vector<std::vector<uint32_t>> normals;
    for (uint64_t idx = 1; idx < total; ++idx) {
        auto v = vector_from_index(idx, f.q(), k);
        auto norm = normalize_projective(f, v);
        if (norm == v) normals.push_back(std::move(norm));
    }
    return normals;
}

std::vector<HalfSpace> hyperplane_bounds(const StorageScheme& scheme) {
    scheme.validate();
    const Field& f = *scheme.field;
    auto points = point_multiset(scheme);
    std::vector<HalfSpace> bounds;
    for (const auto& h : enumerate_hyperplanes(f, scheme.k)) {
        // Objects in play: unit vectors e_i off the hyperplane, i.e. h_i != 0.
        HalfSpace hs;
        hs.a.assign(scheme.k, Rat(0));
        bool any = false;
        for (int i = 0; i < scheme.k; ++i)
            if (h[i] != 0) {
                hs.a[i] = 1;
                any = true;
            }
        if (!any) continue;
        int off_hyperplane = 0;
        for (const auto& [point, mult] : points.multiplicity)
            if (dot(f, h, point) != 0) off_hyperplane += mult;
        hs.b = Rat(off_hyperplane) * scheme.mu;
        bounds.push_back(std::move(hs));
    }
    return canonical_halfspace_set(std::move(bounds));
}

std::vector<HalfSpace> counting_bounds(const RecoveryCatalog& cat) {
    const auto& scheme = *cat.scheme;
    const Rat& mu = scheme.mu;
    const Rat budget = Rat(scheme.n) * mu;

    // Per object: usage grows at slope s_1 through the first set, then at
    // least at slope s_2; both lines lower-bound the cheapest usage.
    struct Line {
        Rat slope, intercept;
    };
    std::vector<std::vector<Line>> lines(cat.k());
    for (int i = 0; i < cat.k(); ++i) {
        auto profile = size_profile(cat, i);
        if (profile.empty()) throw ValidationError("object with no recovery sets");
        lines[i].push_back({Rat(profile[0]), Rat(0)});
        if (profile.size() > 1 && profile[1] != profile[0]) {
            Rat s1(profile[0]), s2(profile[1]);
            lines[i].push_back({s2, -mu * (s2 - s1)});
        }
    }

    std::vector<HalfSpace> out;
    std::vector<int> choice(cat.k(), 0);
    while (true) {
        HalfSpace hs;
        hs.a.resize(cat.k());
        Rat intercept = 0;
        for (int i = 0; i < cat.k(); ++i) {
            hs.a[i] = lines[i][choice[i]].slope;
            intercept += lines[i][choice[i]].intercept;
        }
        hs.b = budget - intercept;
        out.push_back(std::move(hs));
        int pos = cat.k() - 1;
        while (pos >= 0 && choice[pos] + 1 >= int(lines[pos].size())) {
            choice[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++choice[pos];
    }
    return canonical_halfspace_set(std::move(out));
}

namespace {

RegionPolytope outer_impl(const StorageScheme& scheme, bool include_counting,
                          const std::vector<int>& dims, const RecoveryCatalog* cat) {
    scheme.validate();
    const int dim = int(dims.size());
    for (int d : dims)
        if (d < 0 || d >= scheme.k) throw ValidationError("slice coordinate out of range");

    std::vector<HalfSpace> full = hyperplane_bounds(scheme);
    RecoveryCatalog local_cat;
    if (include_counting) {
        if (!cat) {
            local_cat = enumerate_recovery_sets(
                std::make_shared<StorageScheme>(scheme));
            cat = &local_cat;
        }
        auto counting = counting_bounds(*cat);
        full.insert(full.end(), counting.begin(), counting.end());
    }

    // Restrict each bound to the slice coordinates (the rest are zero).
    std::vector<HalfSpace> hs;
    for (const auto& h : full) {
        HalfSpace restricted;
        restricted.a.resize(dim);
        for (int i = 0; i < dim; ++i) restricted.a[i] = h.a[dims[i]];
        restricted.b = h.b;
        hs.push_back(std::move(restricted));
    }
    for (int i = 0; i < dim; ++i) {
        HalfSpace nonneg;
        nonneg.a.assign(dim, Rat(0));
        nonneg.a[i] = -1;
        nonneg.b = 0;
        hs.push_back(std::move(nonneg));
    }

    if (dim <= 3) return polytope_from_halfspaces(hs, dim, /*exact=*/false);
    RegionPolytope out;
    out.halfspaces = canonical_halfspace_set(std::move(hs));
    out.exact = false;
    return out;
}

}  // namespace

RegionPolytope outer_polytope(const StorageScheme& scheme, bool include_counting,
                              const RecoveryCatalog* cat) {
    std::vector<int> dims(scheme.k);
    for (int i = 0; i < scheme.k; ++i) dims[i] = i;
    return outer_impl(scheme, include_counting, dims, cat);
}

RegionPolytope outer_polytope_slice(const StorageScheme& scheme, bool include_counting,
                                    const std::vector<int>& dims, const RecoveryCatalog* cat) {
    return outer_impl(scheme, include_counting, dims, cat);
}

}  // namespace srr
