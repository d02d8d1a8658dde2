#pragma once

#include <cstdint>

namespace srr {

// Counter-based generator: every draw is a pure function of (seed, index,
// stream), so results do not depend on evaluation order or threading.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed) : seed_(seed) {}

    uint64_t bits(uint64_t index, uint64_t stream = 0) const;

    // Uniform in [0, 1) with 53 random bits, an exactly representable dyadic.
    double uniform(uint64_t index, uint64_t stream = 0) const;

    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
};

// Stateful convenience wrapper for sequential draws (event loops).
class SequentialRng {
  public:
    explicit SequentialRng(uint64_t seed) : rng_(seed) {}

    double uniform() { return rng_.uniform(counter_++); }
    // Strictly positive uniform, safe for log().
    double uniform_positive();
    double exponential(double rate);

    uint64_t draws() const { return counter_; }

  private:
    CounterRng rng_;
    uint64_t counter_ = 0;
};

}  // namespace srr
