#include "srr/recovery.hpp"

#include "srr/errors.hpp"

#include <algorithm>

namespace srr {

int RecoveryCatalog::total_sets() const {
    int total = 0;
    for (const auto& per_object : sets) total += int(per_object.size());
    return total;
}

namespace {

// Visits index subsets of {0..n-1} in (size, lexicographic) order, pruning
// any subset whose columns are dependent: supersets of a dependent set can
// never be minimal recovery sets.
struct SubsetWalker {
    const StorageScheme& s;
    const EnumerationOptions& opts;
    long long examined = 0;
    std::vector<int> stack;
    std::vector<std::vector<uint32_t>> cols;
    RecoveryCatalog* out;

    void expand(int max_size) {
        int last = stack.empty() ? -1 : stack.back();
        for (int next = last + 1; next < s.n; ++next) {
            if (++examined > opts.budget)
                throw BudgetError("recovery enumeration exceeded the subset budget");
            stack.push_back(next);
            cols.push_back(s.columns[next]);
            if (rank_of_columns(*s.field, cols) == int(cols.size())) {
                visit();
                if (int(stack.size()) < max_size) expand(max_size);
            }
            stack.pop_back();
            cols.pop_back();
        }
    }

    void visit() {
        // With independent columns the representation of e_i is unique, so
        // the set is minimal for object i iff every coefficient is nonzero.
        for (int obj = 0; obj < s.k; ++obj) {
            std::vector<uint32_t> target(s.k, 0);
            target[obj] = 1;
            auto coeffs = solve_in_columns(*s.field, cols, target);
            if (!coeffs) continue;
            bool minimal = true;
            for (uint32_t c : *coeffs)
                if (c == 0) {
                    minimal = false;
                    break;
                }
            if (minimal) out->sets[obj].push_back({obj, stack});
        }
    }
};

}  // namespace

RecoveryCatalog enumerate_recovery_sets(std::shared_ptr<const StorageScheme> scheme,
                                        const EnumerationOptions& opts) {
    if (!scheme) throw ValidationError("catalog needs a scheme");
    scheme->validate();
    int max_size = opts.max_size == 0 ? scheme->k : std::min(opts.max_size, scheme->k);
    if (max_size < 1) throw ValidationError("max recovery-set size must be >= 1");

    RecoveryCatalog cat;
    cat.scheme = scheme;
    cat.sets.resize(scheme->k);

    SubsetWalker walker{*scheme, opts, 0, {}, {}, &cat};
    walker.expand(max_size);

    for (auto& per_object : cat.sets) {
        std::sort(per_object.begin(), per_object.end(),
                  [](const RecoverySet& a, const RecoverySet& b) {
                      if (a.servers.size() != b.servers.size())
                          return a.servers.size() < b.servers.size();
                      return a.servers < b.servers;
                  });
    }
    // Every object is recoverable somehow because the scheme has rank k.
    for (int obj = 0; obj < scheme->k; ++obj)
        if (cat.sets[obj].empty() && max_size == scheme->k)
            throw Error("internal: rank-k scheme with an unrecoverable object");
    return cat;
}

std::vector<int> size_profile(const RecoveryCatalog& cat, int object) {
    if (object < 0 || object >= cat.k()) throw ValidationError("object index out of range");
    std::vector<int> sizes;
    sizes.reserve(cat.sets[object].size());
    for (const auto& rs : cat.sets[object]) sizes.push_back(rs.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::vector<int>> all_size_profiles(const RecoveryCatalog& cat) {
    std::vector<std::vector<int>> profiles;
    profiles.reserve(cat.k());
    for (int i = 0; i < cat.k(); ++i) profiles.push_back(size_profile(cat, i));
    return profiles;
}

}  // namespace srr
