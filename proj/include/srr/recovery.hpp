#pragma once

#include "srr/codebook.hpp"

#include <memory>
#include <vector>

namespace srr {

// A minimal set of servers whose columns recover one object: the columns are
// independent, the object's unit vector lies in their span, and dropping any
// one server breaks that. Server indices are 0-based and sorted.
struct RecoverySet {
    int object = 0;
    std::vector<int> servers;

    int size() const { return int(servers.size()); }
    bool operator==(const RecoverySet&) const = default;
};

struct RecoveryCatalog {
    std::shared_ptr<const StorageScheme> scheme;
    // Per object, ordered by (size, lexicographic server list).
    std::vector<std::vector<RecoverySet>> sets;

    int k() const { return scheme->k; }
    int n() const { return scheme->n; }
    int count(int object) const { return int(sets[object].size()); }
    int total_sets() const;
};

struct EnumerationOptions {
    int max_size = 0;               // 0 means "up to k"
    long long budget = 2'000'000;   // examined subsets before giving up
};

RecoveryCatalog enumerate_recovery_sets(std::shared_ptr<const StorageScheme> scheme,
                                        const EnumerationOptions& opts = {});

// Ascending multiset of recovery-set sizes for one object.
std::vector<int> size_profile(const RecoveryCatalog& cat, int object);

std::vector<std::vector<int>> all_size_profiles(const RecoveryCatalog& cat);

}  // namespace srr
