#include "srr/metrics.hpp"

#include "srr/errors.hpp"
#include "srr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srr {

// ---- rng ----

namespace {

uint64_t splitmix_step(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t CounterRng::bits(uint64_t index, uint64_t stream) const {
    uint64_t z = splitmix_step(seed_ ^ 0x6a09e667f3bcc909ull);
    z = splitmix_step(z ^ index);
    z = splitmix_step(z ^ (stream * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull));
    return z;
}

double CounterRng::uniform(uint64_t index, uint64_t stream) const {
    return double(bits(index, stream) >> 11) * 0x1.0p-53;
}

double SequentialRng::uniform_positive() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return u;
}

double SequentialRng::exponential(double rate) {
    return -std::log(uniform_positive()) / rate;
}

// ---- distributions ----

int DemandDistribution::k() const {
    switch (kind) {
        case Kind::Box: return int(box_bounds.size());
        case Kind::TruncatedExponential: return int(exp_rates.size());
        case Kind::Grid: return grid.empty() ? 0 : int(grid[0].lambda.size());
    }
    return 0;
}

void DemandDistribution::validate(int expected_k) const {
    if (k() != expected_k) throw ValidationError("distribution dimension mismatch");
    switch (kind) {
        case Kind::Box:
            for (const auto& b : box_bounds)
                if (b <= 0) throw ValidationError("box bounds must be positive");
            break;
        case Kind::TruncatedExponential:
            if (exp_bounds.size() != exp_rates.size())
                throw ValidationError("need one truncation bound per rate");
            for (double r : exp_rates)
                if (r <= 0) throw ValidationError("exponential rates must be positive");
            for (double b : exp_bounds)
                if (b <= 0) throw ValidationError("truncation bounds must be positive");
            break;
        case Kind::Grid: {
            if (grid.empty()) throw ValidationError("grid distribution needs points");
            double mass = 0;
            for (const auto& p : grid) {
                if (int(p.lambda.size()) != expected_k)
                    throw ValidationError("grid point dimension mismatch");
                if (p.probability < 0) throw ValidationError("negative probability");
                for (const auto& l : p.lambda)
                    if (l < 0) throw ValidationError("grid point outside the orthant");
                mass += p.probability;
            }
            if (std::abs(mass - 1.0) > 1e-9)
                throw ValidationError("grid probabilities must sum to 1");
            break;
        }
    }
}

DemandDistribution anticorrelated_grid(double span, int steps, double hot, double cold,
                                       double sigma) {
    if (steps < 2 || span <= 0 || sigma <= 0)
        throw ValidationError("bad anticorrelated grid parameters");
    DemandDistribution dist;
    dist.kind = DemandDistribution::Kind::Grid;
    double total = 0;
    std::vector<double> raw;
    for (int i = 0; i < steps; ++i)
        for (int j = 0; j < steps; ++j) {
            double x = span * i / (steps - 1);
            double y = span * j / (steps - 1);
            auto bump = [&](double cx, double cy) {
                double dx = x - cx, dy = y - cy;
                return std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
            };
            double w = bump(hot, cold) + bump(cold, hot);
            raw.push_back(w);
            total += w;
        }
    int idx = 0;
    for (int i = 0; i < steps; ++i)
        for (int j = 0; j < steps; ++j) {
            DemandDistribution::GridPoint p;
            p.lambda = {rat_from_double(span * i / (steps - 1)),
                        rat_from_double(span * j / (steps - 1))};
            p.probability = raw[idx++] / total;
            dist.grid.push_back(std::move(p));
        }
    return dist;
}

namespace {

std::vector<Rat> sample_point(const DemandDistribution& dist, const CounterRng& rng,
                              uint64_t index) {
    const int k = dist.k();
    std::vector<Rat> lambda(k);
    for (int c = 0; c < k; ++c) {
        double u = rng.uniform(index, uint64_t(c));
        if (dist.kind == DemandDistribution::Kind::Box) {
            lambda[c] = dist.box_bounds[c] * rat_from_double(u);
        } else {
            double rate = dist.exp_rates[c];
            double bound = dist.exp_bounds[c];
            double mass = 1.0 - std::exp(-rate * bound);
            double v = -std::log1p(-u * mass) / rate;
            lambda[c] = rat_from_double(std::min(v, bound));
        }
    }
    return lambda;
}

}  // namespace

CoverageResult coverage(const RecoveryCatalog& cat, const DemandDistribution& dist,
                        long long samples, uint64_t seed) {
    dist.validate(cat.k());
    CoverageResult out;
    if (dist.kind == DemandDistribution::Kind::Grid) {
        double covered = 0;
        for (const auto& p : dist.grid)
            if (is_achievable(cat, DemandVector{p.lambda}).achievable)
                covered += p.probability;
        out.estimate = covered;
        out.exact = true;
        out.samples = static_cast<long long>(dist.grid.size());
        return out;
    }
    if (samples < 1000) throw ValidationError("coverage needs at least 10^3 samples");
    CounterRng rng(seed);
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        auto lambda = sample_point(dist, rng, uint64_t(i));
        if (is_achievable(cat, DemandVector{std::move(lambda)}).achievable) ++hits;
    }
    double p = double(hits) / double(samples);
    out.estimate = p;
    out.ci_half_width = 1.96 * std::sqrt(p * (1 - p) / double(samples));
    out.samples = samples;
    return out;
}

Rat cost_of(const RecoveryCatalog& cat, const Allocation& alloc) {
    if (int(alloc.weights.size()) != cat.k())
        throw ValidationError("allocation shape mismatch");
    Rat transfer = 0, total = 0;
    for (int i = 0; i < cat.k(); ++i) {
        if (int(alloc.weights[i].size()) != cat.count(i))
            throw ValidationError("allocation shape mismatch");
        for (int j = 0; j < cat.count(i); ++j) {
            const Rat& w = alloc.weights[i][j];
            if (w < 0) throw ValidationError("negative allocation weight");
            transfer += Rat(cat.sets[i][j].size()) * w;
            total += w;
        }
    }
    auto loads = server_loads(cat, alloc);
    for (const auto& load : loads)
        if (load > cat.scheme->mu) throw ValidationError("allocation overloads a server");
    if (total == 0) return 1;
    return transfer / total;
}

ExpectedCostResult expected_min_cost(const RecoveryCatalog& cat,
                                     const DemandDistribution& dist, long long samples,
                                     uint64_t seed) {
    dist.validate(cat.k());
    ExpectedCostResult out;
    if (dist.kind == DemandDistribution::Kind::Grid) {
        double mass_in = 0, weighted = 0;
        long long covered_points = 0;
        for (const auto& p : dist.grid) {
            DemandVector d{p.lambda};
            if (!is_achievable(cat, d).achievable) continue;
            mass_in += p.probability;
            weighted += p.probability * rat_to_double(min_cost_allocation(cat, d).second);
            ++covered_points;
        }
        out.covered_mass = mass_in;
        out.expected_cost = mass_in > 0 ? weighted / mass_in : 0;
        out.samples = static_cast<long long>(dist.grid.size());
        out.covered_samples = covered_points;
        return out;
    }
    if (samples < 1000) throw ValidationError("expected cost needs at least 10^3 samples");
    CounterRng rng(seed);
    long long covered = 0;
    double sum = 0;
    for (long long i = 0; i < samples; ++i) {
        DemandVector d{sample_point(dist, rng, uint64_t(i))};
        if (!is_achievable(cat, d).achievable) continue;
        ++covered;
        sum += rat_to_double(min_cost_allocation(cat, d).second);
    }
    out.samples = samples;
    out.covered_samples = covered;
    out.covered_mass = double(covered) / double(samples);
    out.expected_cost = covered > 0 ? sum / double(covered) : 0;
    return out;
}

}  // namespace srr
