#pragma once

#include "srr/rational.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"

#include <optional>
#include <vector>

namespace srr {

struct Hyperedge {
    std::vector<int> vertices;  // sorted vertex ids
    int label = 0;              // the object this edge recovers
};

// Vertices 0..n-1 are the servers; vertices n.. are dummies attached to
// systematic columns so size-one recovery sets become proper edges. In full
// mode an MDS scheme gets k-1 dummies per systematic column, which pads its
// singleton sets into k-hyperedges.
struct RecoveryHypergraph {
    enum class Mode { PairsOnly, Full };

    Mode mode = Mode::PairsOnly;
    int num_servers = 0;
    int num_vertices = 0;
    int k = 0;
    Rat mu = 1;
    std::vector<Hyperedge> edges;
    std::vector<int> dummy_owner;  // column that owns each dummy vertex

    int degree(int vertex) const;
};

RecoveryHypergraph build_graph(const StorageScheme& scheme, const RecoveryCatalog& cat,
                               RecoveryHypergraph::Mode mode);

// Max total edge weight with per-vertex weight sums <= 1.
Rat fractional_matching_number(const RecoveryHypergraph& g);

// Exact search; capped at 24 vertices.
int matching_number(const RecoveryHypergraph& g);
int vertex_cover_number(const RecoveryHypergraph& g);

// Defined for graphs whose edges all have size <= 2.
bool is_bipartite(const RecoveryHypergraph& g);

// Demand is servable iff edge weights exist with per-vertex sums <= mu and
// label-i weights summing to lambda_i; must agree with is_achievable.
bool achievable_via_matching(const RecoveryHypergraph& g, const DemandVector& demand);

struct IntegralResult {
    bool achievable = false;
    std::optional<Allocation> allocation;  // all-integer weights when found
};

// Exhaustive search for an all-integer valid allocation.
IntegralResult integral_achievable(const RecoveryCatalog& cat, long long mu,
                                   const std::vector<long long>& lambda,
                                   long long node_budget = 10'000'000);

// All multiset demands with sum t are integrally servable.
bool is_batch_code(const RecoveryCatalog& cat, long long mu, long long t,
                   long long node_budget = 10'000'000);

// t requests for any single object are integrally servable.
bool is_pir_code(const RecoveryCatalog& cat, long long mu, long long t,
                 long long node_budget = 10'000'000);

}  // namespace srr
