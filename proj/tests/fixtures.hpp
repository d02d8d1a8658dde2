#pragma once

// Shared scheme builders for the test suites.

#include "srr/codebook.hpp"
#include "srr/recovery.hpp"

#include <memory>

namespace srr::fixtures {

inline FieldSpec gf(uint32_t p) { return FieldSpec{p, 1, {}}; }

// (a, a, b, b)
inline StorageScheme replication22(const Rat& mu = 1) {
    return make_replication(2, {2, 2}, mu);
}

// (a, b, a+b, a+2b) over GF(3); a+2b is a-b there.
inline StorageScheme mds42(const Rat& mu = 1) { return make_mds(4, 2, gf(3), true, mu); }

// (a, a, b, a+b) over GF(2)
inline StorageScheme hybrid_aabab(const Rat& mu = 1) {
    return make_explicit(gf(2), 2, {{1, 0}, {1, 0}, {0, 1}, {1, 1}}, mu);
}

// (a, b, b, b, b)
inline StorageScheme one_a_four_b(const Rat& mu = 1) {
    return make_replication(2, {1, 4}, mu);
}

// 3 + 3 replicas plus a+b and a+alpha*b over GF(11).
inline StorageScheme hybrid332(const Rat& mu = 1) {
    auto f = Field::make(gf(11));
    uint32_t alpha = f->primitive_element();
    return make_explicit(gf(11), 2,
                         {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, alpha}},
                         mu);
}

// The (12,4) locally recoverable fixture: two (4,2) groups with parities
// (a+b, a+2b) and (c+d, 3c+4d), plus four global parities, over GF(5).
inline LrcProfile lrc12_4_profile() {
    LrcProfile p;
    p.k = 4;
    p.ell = 4;
    p.r = 2;
    p.global_parities = 4;
    p.groups = {{{0, 1}, {{1, 1}, {1, 2}}}, {{2, 3}, {{1, 1}, {3, 4}}}};
    return p;
}

inline StorageScheme lrc12_4(const Rat& mu = 1) {
    return make_lrc(lrc12_4_profile(), gf(5), mu);
}

inline std::shared_ptr<const StorageScheme> shared(StorageScheme s) {
    return std::make_shared<StorageScheme>(std::move(s));
}

inline RecoveryCatalog catalog(StorageScheme s, int max_size = 0) {
    EnumerationOptions opts;
    opts.max_size = max_size;
    return enumerate_recovery_sets(shared(std::move(s)), opts);
}

}  // namespace srr::fixtures
