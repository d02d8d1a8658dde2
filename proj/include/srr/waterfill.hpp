#pragma once

#include "srr/codebook.hpp"
#include "srr/rational.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"

#include <optional>
#include <vector>

namespace srr {

struct ServerLoads {
    std::vector<Rat> gamma;
};

struct WaterfillEvent {
    Rat amount;                // demand rate routed to this server set
    std::vector<int> servers;  // sorted, 0-based
};

struct WaterfillResult {
    ServerLoads loads;
    Rat residual = 0;
    bool feasible = false;
    // Pour events beyond the systematic assignments; the amounts times the
    // set sizes add up to exactly the load placed beyond step one.
    std::vector<WaterfillEvent> log;
};

// Systematic servers first, then the residual flows to the k least-loaded
// unsaturated servers. Tiers advance in closed form instead of epsilon
// steps, so the result is exact.
WaterfillResult mds_waterfill(int n, int k, const Rat& mu, const std::vector<Rat>& lambda);

// Aggregate capacity test: serving lambda_i costs min(lambda_i, mu) at the
// systematic server plus k units per unit of overflow, and the total cannot
// exceed n * mu.
bool mds_bound_holds(int n, int k, const Rat& mu, const std::vector<Rat>& lambda);

// Cheapest possible capacity consumption when each object fills its recovery
// sets by ascending size at rate mu per set. nullopt when some demand cannot
// fit in its sets at all.
std::optional<Rat> capacity_usage(const std::vector<std::vector<int>>& size_profiles,
                                  const Rat& mu, const std::vector<Rat>& lambda);

// Group-local waterfilling first, then the pooled residual goes to the
// least-loaded admissible k-sets (a set that touches a group's local parity
// must contain r servers of that group, and must decode everything).
WaterfillResult lrc_waterfill(const StorageScheme& scheme, const LrcProfile& profile,
                              const std::vector<Rat>& lambda);

// Turns an mds_waterfill run into a per-recovery-set allocation over the
// catalog of the same systematic scheme.
Allocation mds_waterfill_allocation(const RecoveryCatalog& cat, const WaterfillResult& result,
                                    const std::vector<Rat>& lambda);

}  // namespace srr
