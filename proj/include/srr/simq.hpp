#pragma once

#include "srr/rational.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace srr {

// Fork-join queueing run: Poisson arrivals per object, static probabilistic
// routing onto recovery sets, one FCFS exponential-service queue per server.
struct SimConfig {
    std::shared_ptr<const RecoveryCatalog> catalog;
    std::vector<Rat> lambda;
    Allocation allocation;          // row i must sum to lambda[i]
    double horizon = 1e5;
    double warmup_fraction = 0.2;   // discarded prefix of the horizon
    double sample_interval = 25.0;  // queue-length sampling for drift fits
    double stability_margin = 0.05; // stable iff utilization < 1 - margin
    uint64_t seed = 1;
};

struct ServerStats {
    double subtask_arrival_rate = 0;  // measured, post-warmup
    double utilization = 0;           // arrival rate / mu
    double mean_queue_length = 0;     // time average, post-warmup
    double drift_slope = 0;           // least-squares queue length vs time
    bool stable = false;
};

struct QueueSample {
    double time = 0;
    std::vector<int> queue_lengths;
};

struct SimReport {
    std::vector<ServerStats> servers;
    double mean_response_time = 0;    // completed requests arriving post-warmup
    long long completed_requests = 0;
    long long total_events = 0;
    std::vector<QueueSample> samples;
};

SimReport simulate(const SimConfig& config);

}  // namespace srr
