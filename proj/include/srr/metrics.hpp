#pragma once

#include "srr/rational.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"

#include <vector>

namespace srr {

// Demand distributions the coverage and cost analytics understand.
struct DemandDistribution {
    enum class Kind { Box, TruncatedExponential, Grid };

    Kind kind = Kind::Box;

    // Box: uniform over [0, box_bounds[0]] x ... x [0, box_bounds[k-1]].
    std::vector<Rat> box_bounds;

    // TruncatedExponential: independent per-object marginals.
    std::vector<double> exp_rates;
    std::vector<double> exp_bounds;

    // Grid: finitely many weighted demand points, probabilities summing to 1.
    struct GridPoint {
        std::vector<Rat> lambda;
        double probability = 0;
    };
    std::vector<GridPoint> grid;

    int k() const;
    void validate(int expected_k) const;
};

// Two-mode mixture concentrated where one object is hot and the other cold;
// the knob for comparing schemes under skewed demand.
DemandDistribution anticorrelated_grid(double span, int steps, double hot, double cold,
                                       double sigma);

struct CoverageResult {
    double estimate = 0;
    double ci_half_width = 0;  // 95% normal interval; 0 for exact results
    bool exact = false;
    long long samples = 0;
};

// Probability mass of the distribution falling inside the region. Grid
// distributions are summed exactly; the others are Monte Carlo with a
// deterministic counter-keyed sampler.
CoverageResult coverage(const RecoveryCatalog& cat, const DemandDistribution& dist,
                        long long samples, uint64_t seed);

// Downloaded units per served request under the given split: sum of
// |R| * weight over sum of weights (1 for an all-zero allocation).
Rat cost_of(const RecoveryCatalog& cat, const Allocation& alloc);

struct ExpectedCostResult {
    double expected_cost = 0;   // mean of C(lambda) over covered samples
    double covered_mass = 0;    // fraction of samples inside the region
    long long covered_samples = 0;
    long long samples = 0;
};

// Integrates the optimal C(lambda) over the part of the distribution the
// region covers; points outside contribute only to the uncovered mass.
ExpectedCostResult expected_min_cost(const RecoveryCatalog& cat,
                                     const DemandDistribution& dist, long long samples,
                                     uint64_t seed);

}  // namespace srr
