#include "srr/waterfill.hpp"

#include "srr/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace srr {

namespace {

struct LevelGroup {
    Rat level;
    std::vector<int> servers;  // sorted
};

std::vector<LevelGroup> level_groups(const std::vector<Rat>& loads,
                                     const std::vector<int>& servers) {
    std::map<Rat, std::vector<int>> by_level;
    for (int s : servers) by_level[loads[s]].push_back(s);
    std::vector<LevelGroup> out;
    out.reserve(by_level.size());
    for (auto& [level, list] : by_level) out.push_back({level, list});
    return out;
}

// Pours `residual` into the `pool` servers, always hitting the k_set
// least-loaded of them, advancing whole tiers at a time. Returns the amount
// actually served and appends pour events (cyclic k-subsets within the
// moving tier, so the logged sets reproduce the symmetric spread).
Rat pour_least_loaded(std::vector<Rat>& loads, const std::vector<int>& pool, int k_set,
                      const Rat& mu, Rat residual, std::vector<WaterfillEvent>& log) {
    Rat served = 0;
    while (residual > 0) {
        std::vector<int> unsat;
        for (int s : pool)
            if (loads[s] < mu) unsat.push_back(s);
        if (int(unsat.size()) < k_set) break;
        auto groups = level_groups(loads, unsat);

        // Active prefix: whole groups strictly below the pour front plus a
        // partial window into the group that completes k_set slots.
        size_t j = 0;
        int prefix_count = 0;
        while (prefix_count + int(groups[j].servers.size()) < k_set) {
            prefix_count += int(groups[j].servers.size());
            ++j;
        }
        const int window = k_set - prefix_count;           // slots in group j
        const int wsize = int(groups[j].servers.size());   // servers sharing them
        const Rat wrate = Rat(window) / wsize;             // load rate per unit demand

        Rat delta = residual;
        if (j > 0) delta = std::min(delta, mu - groups[j - 1].level);  // prefix saturates
        delta = std::min(delta, (mu - groups[j].level) / wrate);       // window saturates
        if (j > 0 && wrate < 1) {
            // The top prefix group catches the slower window group.
            delta = std::min(delta, (groups[j].level - groups[j - 1].level) / (1 - wrate));
        }
        if (j + 1 < groups.size()) {
            // The window group reaches the next static level.
            delta = std::min(delta, (groups[j + 1].level - groups[j].level) / wrate);
        }

        for (size_t t = 0; t < j; ++t)
            for (int s : groups[t].servers) loads[s] += delta;
        for (int s : groups[j].servers) loads[s] += delta * wrate;

        std::vector<int> prefix;
        for (size_t t = 0; t < j; ++t)
            prefix.insert(prefix.end(), groups[t].servers.begin(), groups[t].servers.end());
        std::sort(prefix.begin(), prefix.end());
        if (window == wsize) {
            std::vector<int> full = prefix;
            full.insert(full.end(), groups[j].servers.begin(), groups[j].servers.end());
            std::sort(full.begin(), full.end());
            log.push_back({delta, std::move(full)});
        } else {
            for (int t = 0; t < wsize; ++t) {
                std::vector<int> set = prefix;
                for (int i = 0; i < window; ++i)
                    set.push_back(groups[j].servers[(t + i) % wsize]);
                std::sort(set.begin(), set.end());
                log.push_back({delta / wsize, std::move(set)});
            }
        }

        residual -= delta;
        served += delta;
    }
    return served;
}

void check_rates(const std::vector<Rat>& lambda) {
    for (const auto& l : lambda)
        if (l < 0) throw ValidationError("demand rates must be nonnegative");
}

}  // namespace

WaterfillResult mds_waterfill(int n, int k, const Rat& mu, const std::vector<Rat>& lambda) {
    if (k < 1 || n < k) throw ValidationError("waterfilling requires n >= k >= 1");
    if (mu <= 0) throw ValidationError("mu must be positive");
    if (int(lambda.size()) != k) throw ValidationError("demand dimension mismatch");
    check_rates(lambda);

    WaterfillResult result;
    result.loads.gamma.assign(n, Rat(0));
    Rat residual = 0;
    for (int i = 0; i < k; ++i) {
        result.loads.gamma[i] = std::min(lambda[i], mu);
        residual += std::max(Rat(0), lambda[i] - mu);
    }
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    Rat served = pour_least_loaded(result.loads.gamma, pool, k, mu, residual, result.log);
    result.residual = residual - served;
    result.feasible = result.residual == 0;
    return result;
}

bool mds_bound_holds(int n, int k, const Rat& mu, const std::vector<Rat>& lambda) {
    if (int(lambda.size()) != k) throw ValidationError("demand dimension mismatch");
    check_rates(lambda);
    Rat usage = 0;
    for (const auto& l : lambda)
        usage += std::min(l, mu) + Rat(k) * std::max(Rat(0), l - mu);
    return usage <= Rat(n) * mu;
}

std::optional<Rat> capacity_usage(const std::vector<std::vector<int>>& size_profiles,
                                  const Rat& mu, const std::vector<Rat>& lambda) {
    if (size_profiles.size() != lambda.size())
        throw ValidationError("profile/demand dimension mismatch");
    check_rates(lambda);
    Rat usage = 0;
    for (size_t i = 0; i < lambda.size(); ++i) {
        Rat rem = lambda[i];
        for (int size : size_profiles[i]) {
            if (rem == 0) break;
            Rat take = std::min(rem, mu);
            usage += Rat(size) * take;
            rem -= take;
        }
        if (rem > 0) return std::nullopt;  // demand exceeds the object's sets
    }
    return usage;
}

namespace {

struct LrcLayout {
    int k, r, ell, num_groups, local_parities, globals;
    // Per group: server indices (systematic members then local parities).
    std::vector<std::vector<int>> group_servers;
    std::vector<int> object_server;  // systematic server of each object
    std::vector<int> group_of_object;
};

LrcLayout lrc_layout(const StorageScheme& scheme, const LrcProfile& profile) {
    validate_lrc_profile(profile, *scheme.field);
    LrcLayout lay;
    lay.k = profile.k;
    lay.r = profile.r;
    lay.ell = profile.ell;
    lay.num_groups = int(profile.groups.size());
    lay.local_parities = profile.ell - profile.r;
    lay.globals = profile.global_parities;
    const int expected_n = lay.k + lay.num_groups * lay.local_parities + lay.globals;
    if (scheme.n != expected_n || scheme.k != profile.k)
        throw ValidationError("scheme does not match the lrc profile layout");
    lay.object_server.assign(lay.k, -1);
    lay.group_of_object.assign(lay.k, -1);
    lay.group_servers.resize(lay.num_groups);
    int column = 0;
    for (int g = 0; g < lay.num_groups; ++g)
        for (int obj : profile.groups[g].objects) {
            lay.object_server[obj] = column;
            lay.group_of_object[obj] = g;
            lay.group_servers[g].push_back(column);
            ++column;
        }
    for (int t = 0; t < lay.local_parities; ++t)
        for (int g = 0; g < lay.num_groups; ++g) lay.group_servers[g].push_back(column++);
    return lay;
}

}  // namespace

WaterfillResult lrc_waterfill(const StorageScheme& scheme, const LrcProfile& profile,
                              const std::vector<Rat>& lambda) {
    scheme.validate();
    LrcLayout lay = lrc_layout(scheme, profile);
    if (int(lambda.size()) != lay.k) throw ValidationError("demand dimension mismatch");
    check_rates(lambda);
    const Rat& mu = scheme.mu;

    WaterfillResult result;
    result.loads.gamma.assign(scheme.n, Rat(0));
    auto& loads = result.loads.gamma;

    // Step one: systematic assignment, then each group's overflow goes to the
    // r least-loaded servers of that group.
    Rat residual = 0;
    for (int g = 0; g < lay.num_groups; ++g) {
        Rat group_overflow = 0;
        for (int obj : profile.groups[g].objects) {
            loads[lay.object_server[obj]] = std::min(lambda[obj], mu);
            group_overflow += std::max(Rat(0), lambda[obj] - mu);
        }
        Rat served = pour_least_loaded(loads, lay.group_servers[g], lay.r, mu,
                                       group_overflow, result.log);
        residual += group_overflow - served;
    }

    // Step two: pooled residual over admissible least-loaded k-sets. A set is
    // admissible when the local-parity quota holds and its columns decode all
    // objects. Among the tied least-loaded sets, the pour mixes so that the
    // bottom load level rises as evenly as the set structure permits (the
    // small-step process keeps re-picking whichever admissible set has fallen
    // behind, which equalizes the bottom level in the limit).
    if (residual > 0) {
        std::map<std::vector<int>, bool> rank_cache;
        auto decodes_everything = [&](const std::vector<int>& set) {
            auto it = rank_cache.find(set);
            if (it != rank_cache.end()) return it->second;
            std::vector<std::vector<uint32_t>> cols;
            cols.reserve(set.size());
            for (int s : set) cols.push_back(scheme.columns[s]);
            bool ok = rank_of_columns(*scheme.field, cols) == lay.k;
            rank_cache.emplace(set, ok);
            return ok;
        };
        auto quota_ok = [&](const std::vector<int>& set) {
            for (int g = 0; g < lay.num_groups; ++g) {
                bool touches_parity = false;
                int in_group = 0;
                for (int s : set) {
                    const auto& gs = lay.group_servers[g];
                    if (std::find(gs.begin(), gs.end(), s) == gs.end()) continue;
                    ++in_group;
                    if (s >= lay.k) touches_parity = true;
                }
                if (touches_parity && in_group < lay.r) return false;
            }
            return true;
        };

        const long long iteration_budget = 64LL * scheme.n * scheme.n;
        long long iterations = 0;
        while (residual > 0) {
            if (++iterations > iteration_budget)
                throw BudgetError("lrc waterfilling exceeded its event budget");
            std::vector<int> unsat;
            for (int s = 0; s < scheme.n; ++s)
                if (loads[s] < mu) unsat.push_back(s);
            if (int(unsat.size()) < lay.k) break;

            // Gather admissible sets and the minimal sorted-load signature.
            std::vector<std::vector<int>> tied;
            std::vector<Rat> best_sig;
            std::vector<int> pick(lay.k);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == lay.k) {
                    std::vector<int> set(pick);
                    if (!quota_ok(set) || !decodes_everything(set)) return;
                    std::vector<Rat> sig;
                    sig.reserve(set.size());
                    for (int s : set) sig.push_back(loads[s]);
                    std::sort(sig.begin(), sig.end());
                    if (tied.empty() || sig < best_sig) {
                        best_sig = sig;
                        tied.assign(1, set);
                    } else if (sig == best_sig) {
                        tied.push_back(set);
                    }
                    return;
                }
                for (int i = start; i < int(unsat.size()); ++i) {
                    pick[depth] = unsat[i];
                    rec(i + 1, depth + 1);
                }
            };
            rec(0, 0);
            if (tied.empty()) break;

            // Mixing weights over the tied sets that lift the lowest-loaded
            // participants at the largest possible common rate.
            std::vector<int> members;
            for (const auto& set : tied)
                for (int s : set) members.push_back(s);
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            Rat low = loads[members.front()];
            for (int s : members) low = std::min(low, loads[s]);

            const int nw = int(tied.size());
            lp::Problem mix;
            mix.num_vars = nw + 1;  // weights plus the common bottom rate
            {
                std::vector<Rat> ones(nw + 1, Rat(1));
                ones[nw] = 0;
                mix.add_eq(std::move(ones), 1);
            }
            for (int s : members) {
                if (loads[s] != low) continue;
                std::vector<Rat> row(nw + 1, Rat(0));
                for (int t = 0; t < nw; ++t)
                    if (std::find(tied[t].begin(), tied[t].end(), s) != tied[t].end())
                        row[t] = -1;
                row[nw] = 1;  // rate_floor - rate_s <= 0
                mix.add_ub(std::move(row), 0);
            }
            mix.objective.assign(nw + 1, Rat(0));
            mix.objective[nw] = 1;
            mix.maximize = true;
            auto mixed = lp::solve(mix);
            if (mixed.status != lp::Status::Optimal)
                throw Error("pour mixing lp failed");

            std::map<int, Rat> rate;
            for (int t = 0; t < nw; ++t) {
                if (mixed.x[t] == 0) continue;
                for (int s : tied[t]) rate[s] += mixed.x[t];
            }

            Rat delta = residual;
            for (const auto& [s, rs] : rate) delta = std::min(delta, (mu - loads[s]) / rs);
            for (const auto& [u, ru] : rate) {
                for (int v = 0; v < scheme.n; ++v) {
                    Rat rv = rate.count(v) ? rate[v] : Rat(0);
                    if (loads[u] < loads[v] && ru > rv)
                        delta = std::min(delta, (loads[v] - loads[u]) / (ru - rv));
                }
            }
            for (const auto& [s, rs] : rate) loads[s] += delta * rs;
            for (int t = 0; t < nw; ++t)
                if (mixed.x[t] > 0) result.log.push_back({delta * mixed.x[t], tied[t]});
            residual -= delta;
        }
    }

    result.residual = residual;
    result.feasible = residual == 0;
    return result;
}

Allocation mds_waterfill_allocation(const RecoveryCatalog& cat, const WaterfillResult& result,
                                    const std::vector<Rat>& lambda) {
    const auto& scheme = *cat.scheme;
    if (!is_systematic_mds(scheme))
        throw ValidationError("allocation decomposition needs a systematic mds scheme");
    if (!result.feasible) throw ValidationError("cannot decompose an infeasible pour");
    Allocation alloc;
    alloc.weights.resize(cat.k());
    for (int i = 0; i < cat.k(); ++i)
        alloc.weights[i].assign(cat.count(i), Rat(0));

    auto find_set = [&](int object, const std::vector<int>& servers) {
        const auto& sets = cat.sets[object];
        for (int j = 0; j < int(sets.size()); ++j)
            if (sets[j].servers == servers) return j;
        throw Error("pour event set is not a recovery set of the assigned object");
    };

    std::vector<Rat> overflow(cat.k());
    for (int i = 0; i < cat.k(); ++i) {
        Rat systematic = std::min(lambda[i], scheme.mu);
        if (systematic > 0) {
            std::vector<int> self{i};
            alloc.weights[i][find_set(i, self)] += systematic;
        }
        overflow[i] = std::max(Rat(0), lambda[i] - scheme.mu);
    }
    // Events are object-agnostic; hand each one to objects that still have
    // overflow, in index order. Overflowing objects have saturated systematic
    // columns, so the event set is a recovery set for each of them.
    for (const auto& event : result.log) {
        Rat rem = event.amount;
        for (int i = 0; i < cat.k() && rem > 0; ++i) {
            if (overflow[i] == 0) continue;
            Rat take = std::min(overflow[i], rem);
            alloc.weights[i][find_set(i, event.servers)] += take;
            overflow[i] -= take;
            rem -= take;
        }
        if (rem > 0) throw Error("pour events exceed the recorded overflow");
    }
    return alloc;
}

}  // namespace srr
