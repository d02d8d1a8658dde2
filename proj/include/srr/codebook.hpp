#pragma once

#include "srr/galois.hpp"
#include "srr/rational.hpp"

#include <memory>
#include <vector>

namespace srr {

// A linear storage scheme: k objects encoded into n server columns over a
// finite field, every server with the same service rate mu.
struct StorageScheme {
    std::shared_ptr<const Field> field;
    int k = 0;
    int n = 0;
    std::vector<std::vector<uint32_t>> columns;  // n columns, each of length k
    Rat mu = 1;

    // Validates n >= k >= 1, mu > 0, no zero columns, rank k.
    void validate() const;
};

struct LrcGroup {
    std::vector<int> objects;                      // 0-based object indices, size r
    std::vector<std::vector<uint32_t>> parities;   // (ell - r) rows of r coefficients
};

// Pyramid-style layout: k/r disjoint local groups, each an [ell, r] MDS
// local code, plus p global parity columns.
struct LrcProfile {
    int k = 0;
    int ell = 0;
    int r = 0;
    std::vector<LrcGroup> groups;
    int global_parities = 0;
};

StorageScheme make_replication(int k, const std::vector<int>& replicas_per_object,
                               const Rat& mu);

StorageScheme make_mds(int n, int k, const FieldSpec& field, bool systematic, const Rat& mu);

// [2^k - 1, k] binary code whose columns are all nonzero k-vectors in
// ascending numeric order (first coordinate = least significant bit).
StorageScheme make_simplex(int k, const Rat& mu);

// [2^{k-1}, k] binary first-order code. Non-systematic rows are the
// coordinate-hyperplane indicators followed by the all-ones row; the
// systematic variant replaces the all-ones row by the sum of all rows.
StorageScheme make_rm1(int k, bool systematic, const Rat& mu);

StorageScheme make_lrc(const LrcProfile& profile, const FieldSpec& field, const Rat& mu);

StorageScheme make_explicit(const FieldSpec& field, int k,
                            const std::vector<std::vector<uint32_t>>& columns, const Rat& mu);

// True iff every k-subset of columns has rank k.
bool is_mds(const StorageScheme& s);

// True iff the first k columns are the identity and the scheme is MDS.
bool is_systematic_mds(const StorageScheme& s);

void validate_lrc_profile(const LrcProfile& profile, const Field& field);

}  // namespace srr
