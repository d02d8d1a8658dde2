#include "srr/codebook.hpp"

#include "srr/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace srr {

namespace {

constexpr int kMaxServers = 64;

bool is_zero_column(const std::vector<uint32_t>& col) {
    return std::all_of(col.begin(), col.end(), [](uint32_t v) { return v == 0; });
}

void combinations_rank_check(const StorageScheme& s, bool& ok) {
    // Walk all k-subsets of columns; stop at the first rank-deficient one.
    std::vector<int> idx(s.k);
    std::iota(idx.begin(), idx.end(), 0);
    ok = true;
    while (true) {
        std::vector<std::vector<uint32_t>> subset;
        subset.reserve(s.k);
        for (int i : idx) subset.push_back(s.columns[i]);
        if (rank_of_columns(*s.field, subset) != s.k) {
            ok = false;
            return;
        }
        int pos = s.k - 1;
        while (pos >= 0 && idx[pos] == s.n - s.k + pos) --pos;
        if (pos < 0) return;
        ++idx[pos];
        for (int j = pos + 1; j < s.k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<uint32_t> unit_column(int k, int i) {
    std::vector<uint32_t> col(k, 0);
    col[i] = 1;
    return col;
}

std::vector<uint32_t> vandermonde_column(const Field& f, int k, uint32_t point) {
    std::vector<uint32_t> col(k);
    uint32_t v = 1;
    for (int r = 0; r < k; ++r) {
        col[r] = v;
        v = f.mul(v, point);
    }
    return col;
}

bool all_k_subsets_full_rank(const StorageScheme& s) {
    bool ok = false;
    combinations_rank_check(s, ok);
    return ok;
}

}  // namespace

void StorageScheme::validate() const {
    if (!field) throw ValidationError("scheme needs a field");
    if (k < 1 || n < k) throw ValidationError("scheme requires n >= k >= 1");
    if (n > kMaxServers) throw ValidationError("scheme exceeds the 64-server cap");
    if (mu <= 0) throw ValidationError("service rate mu must be positive");
    if (int(columns.size()) != n) throw ValidationError("column count does not match n");
    for (const auto& col : columns) {
        if (int(col.size()) != k) throw ValidationError("column length does not match k");
        for (uint32_t v : col)
            if (v >= field->q()) throw ValidationError("column entry out of field range");
        if (is_zero_column(col)) throw ValidationError("zero columns are not allowed");
    }
    if (rank_of_columns(*field, columns) != k)
        throw ValidationError("generator columns must have rank k");
}

StorageScheme make_replication(int k, const std::vector<int>& replicas_per_object,
                               const Rat& mu) {
    if (int(replicas_per_object.size()) != k)
        throw ValidationError("need one replica count per object");
    StorageScheme s;
    s.field = Field::prime(2);
    s.k = k;
    s.mu = mu;
    for (int i = 0; i < k; ++i) {
        if (replicas_per_object[i] < 1)
            throw ValidationError("every object needs at least one replica");
        for (int c = 0; c < replicas_per_object[i]; ++c)
            s.columns.push_back(unit_column(k, i));
    }
    s.n = int(s.columns.size());
    s.validate();
    return s;
}

StorageScheme make_mds(int n, int k, const FieldSpec& field, bool systematic, const Rat& mu) {
    auto f = Field::make(field);
    StorageScheme s;
    s.field = f;
    s.k = k;
    s.n = n;
    s.mu = mu;
    if (n < k || k < 1) throw ValidationError("mds requires n >= k >= 1");
    if (n == k) {
        for (int i = 0; i < k; ++i) s.columns.push_back(unit_column(k, i));
        s.validate();
        return s;
    }
    if (systematic) {
        if (f->q() < uint32_t(n - k + 1))
            throw ValidationError("field too small for systematic mds construction");
        for (int i = 0; i < k; ++i) s.columns.push_back(unit_column(k, i));
        for (int j = 0; j < n - k; ++j)
            s.columns.push_back(vandermonde_column(*f, k, uint32_t(j + 1)));
        if (!all_k_subsets_full_rank(s)) {
            // Vandermonde tails can miss for k >= 3 on small fields; a Cauchy
            // layout is guaranteed when q >= n.
            if (f->q() < uint32_t(n))
                throw ValidationError("mds verification failure: field too small");
            s.columns.resize(k);
            for (int j = 0; j < n - k; ++j) {
                std::vector<uint32_t> col(k);
                for (int i = 0; i < k; ++i) {
                    uint32_t xi = uint32_t(i);
                    uint32_t yj = uint32_t(k + j);
                    col[i] = f->inv(f->sub(xi, yj));
                }
                s.columns.push_back(col);
            }
            if (!all_k_subsets_full_rank(s)) throw ValidationError("mds verification failure");
        }
    } else {
        if (f->q() < uint32_t(n))
            throw ValidationError("field too small for non-systematic mds construction");
        // Prefer nonzero evaluation points so no column is a unit vector.
        uint32_t start = (f->q() >= uint32_t(n + 1)) ? 1 : 0;
        for (int j = 0; j < n; ++j)
            s.columns.push_back(vandermonde_column(*f, k, start + uint32_t(j)));
        if (!all_k_subsets_full_rank(s)) throw ValidationError("mds verification failure");
    }
    s.validate();
    return s;
}

bool is_mds(const StorageScheme& s) {
    s.validate();
    return all_k_subsets_full_rank(s);
}

bool is_systematic_mds(const StorageScheme& s) {
    for (int i = 0; i < s.k; ++i)
        if (s.columns[i] != unit_column(s.k, i)) return false;
    return is_mds(s);
}

StorageScheme make_simplex(int k, const Rat& mu) {
    if (k < 2 || k > 4) throw ValidationError("simplex construction supports 2 <= k <= 4");
    StorageScheme s;
    s.field = Field::prime(2);
    s.k = k;
    s.n = (1 << k) - 1;
    s.mu = mu;
    for (int v = 1; v <= s.n; ++v) {
        std::vector<uint32_t> col(k);
        for (int i = 0; i < k; ++i) col[i] = (v >> i) & 1;
        s.columns.push_back(col);
    }
    s.validate();
    return s;
}

StorageScheme make_rm1(int k, bool systematic, const Rat& mu) {
    if (k < 2) throw ValidationError("first-order construction requires k >= 2");
    if (k > 7) throw ValidationError("first-order construction capped at k <= 7");
    int n = 1 << (k - 1);
    // Row j (j = 1..k-1) indicates the hyperplane x_j = 0; the last row is
    // all ones. Point i has binary digits of i with x_{k-1} as the high bit.
    std::vector<std::vector<uint32_t>> rows(k, std::vector<uint32_t>(n, 1));
    for (int j = 1; j <= k - 1; ++j) {
        int row_index = k - 1 - j;  // rows ordered r_{k-1}, ..., r_1, r_0
        for (int i = 0; i < n; ++i) {
            int bit = (i >> (j - 1)) & 1;  // x_j of point i
            rows[row_index][i] = bit == 0 ? 1 : 0;
        }
    }
    if (systematic) {
        for (int i = 0; i < n; ++i) {
            uint32_t sum = 0;
            for (int r = 0; r < k; ++r) sum ^= rows[r][i];
            rows[k - 1][i] = sum;
        }
    }
    StorageScheme s;
    s.field = Field::prime(2);
    s.k = k;
    s.n = n;
    s.mu = mu;
    for (int c = 0; c < n; ++c) {
        std::vector<uint32_t> col(k);
        for (int r = 0; r < k; ++r) col[r] = rows[r][c];
        s.columns.push_back(col);
    }
    s.validate();
    return s;
}

void validate_lrc_profile(const LrcProfile& profile, const Field& field) {
    if (profile.k < 1) throw ValidationError("lrc profile needs k >= 1");
    if (profile.ell <= profile.r || profile.r < 1)
        throw ValidationError("lrc profile requires ell > r >= 1");
    if (profile.global_parities < 0) throw ValidationError("negative global parity count");
    std::vector<bool> seen(profile.k, false);
    int local_parities = profile.ell - profile.r;
    for (const auto& g : profile.groups) {
        if (int(g.objects.size()) != profile.r)
            throw ValidationError("each local group must hold exactly r objects");
        for (int obj : g.objects) {
            if (obj < 0 || obj >= profile.k || seen[obj])
                throw ValidationError("groups must partition the objects");
            seen[obj] = true;
        }
        if (int(g.parities.size()) != local_parities)
            throw ValidationError("each group needs ell - r local parities");
        for (const auto& row : g.parities) {
            if (int(row.size()) != profile.r)
                throw ValidationError("local parity rows need r coefficients");
            for (uint32_t c : row)
                if (c >= field.q()) throw ValidationError("parity coefficient out of range");
        }
    }
    if (int(profile.groups.size()) * profile.r != profile.k)
        throw ValidationError("groups must partition the objects into k/r groups");
    for (bool b : seen)
        if (!b) throw ValidationError("groups must cover every object");
}

namespace {

// Exhaustive minimum distance of the [ell, r] local code with generator
// [I_r | P^T]; local demand is desk scale (q^r codewords).
int local_min_distance(const Field& f, const LrcGroup& g, int r) {
    int ell = r + int(g.parities.size());
    uint64_t total = 1;
    for (int i = 0; i < r; ++i) {
        total *= f.q();
        if (total > (1u << 20)) throw ValidationError("local code too large to check");
    }
    int best = ell + 1;
    std::vector<uint32_t> msg(r, 0);
    for (uint64_t code = 1; code < total; ++code) {
        uint64_t rest = code;
        for (int i = 0; i < r; ++i) {
            msg[i] = uint32_t(rest % f.q());
            rest /= f.q();
        }
        int weight = 0;
        for (int i = 0; i < r; ++i)
            if (msg[i] != 0) ++weight;
        for (const auto& row : g.parities) {
            uint32_t sym = 0;
            for (int i = 0; i < r; ++i) sym = f.add(sym, f.mul(row[i], msg[i]));
            if (sym != 0) ++weight;
        }
        best = std::min(best, weight);
    }
    return best;
}

}  // namespace

StorageScheme make_lrc(const LrcProfile& profile, const FieldSpec& field, const Rat& mu) {
    auto f = Field::make(field);
    validate_lrc_profile(profile, *f);
    int local_parities = profile.ell - profile.r;
    for (const auto& g : profile.groups) {
        if (local_min_distance(*f, g, profile.r) < profile.ell - profile.r + 1)
            throw ValidationError("local group code misses the required minimum distance");
    }
    if (f->q() < uint32_t(profile.global_parities + 1))
        throw ValidationError("field too small for the requested global parities");

    StorageScheme s;
    s.field = f;
    s.k = profile.k;
    s.mu = mu;
    for (const auto& g : profile.groups)
        for (int obj : g.objects) s.columns.push_back(unit_column(profile.k, obj));
    // Local parities interleaved: first parity of each group, then second, ...
    for (int t = 0; t < local_parities; ++t) {
        for (const auto& g : profile.groups) {
            std::vector<uint32_t> col(profile.k, 0);
            for (int i = 0; i < profile.r; ++i) col[g.objects[i]] = g.parities[t][i];
            s.columns.push_back(col);
        }
    }
    for (int j = 0; j < profile.global_parities; ++j)
        s.columns.push_back(vandermonde_column(*f, profile.k, uint32_t(j + 1)));
    s.n = int(s.columns.size());
    s.validate();
    return s;
}

StorageScheme make_explicit(const FieldSpec& field, int k,
                            const std::vector<std::vector<uint32_t>>& columns, const Rat& mu) {
    StorageScheme s;
    s.field = Field::make(field);
    s.k = k;
    s.n = int(columns.size());
    s.columns = columns;
    s.mu = mu;
    s.validate();
    return s;
}

}  // namespace srr
