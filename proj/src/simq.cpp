#include "srr/simq.hpp"

#include "srr/errors.hpp"
#include "srr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

namespace srr {

namespace {

struct Event {
    double time;
    long long seq;  // deterministic tie-break
    enum class Kind { Arrival, Completion } kind;
    int index;  // object for arrivals, server for completions

    bool operator>(const Event& o) const {
        if (time != o.time) return time > o.time;
        return seq > o.seq;
    }
};

struct Request {
    double arrival = 0;
    int pending = 0;
};

}  // namespace

SimReport simulate(const SimConfig& config) {
    if (!config.catalog) throw ValidationError("simulation needs a catalog");
    const RecoveryCatalog& cat = *config.catalog;
    const int k = cat.k(), n = cat.n();
    if (int(config.lambda.size()) != k) throw ValidationError("demand dimension mismatch");
    if (config.horizon <= 0) throw ValidationError("horizon must be positive");
    if (config.warmup_fraction < 0 || config.warmup_fraction >= 1)
        throw ValidationError("warmup fraction must lie in [0, 1)");
    if (int(config.allocation.weights.size()) != k)
        throw ValidationError("allocation shape mismatch");
    for (int i = 0; i < k; ++i) {
        if (int(config.allocation.weights[i].size()) != cat.count(i))
            throw ValidationError("allocation shape mismatch");
        Rat sum = 0;
        for (const auto& w : config.allocation.weights[i]) {
            if (w < 0) throw ValidationError("negative routing weight");
            sum += w;
        }
        if (sum != config.lambda[i])
            throw ValidationError("allocation row sums must equal the demand vector");
    }

    const double mu = rat_to_double(cat.scheme->mu);
    const double warmup = config.horizon * config.warmup_fraction;
    const double measured_span = config.horizon - warmup;

    // Routing tables: cumulative probabilities over the recovery sets.
    std::vector<double> rates(k);
    std::vector<std::vector<double>> cumulative(k);
    for (int i = 0; i < k; ++i) {
        rates[i] = rat_to_double(config.lambda[i]);
        if (rates[i] <= 0) continue;
        double acc = 0;
        for (const auto& w : config.allocation.weights[i]) {
            acc += rat_to_double(w) / rates[i];
            cumulative[i].push_back(acc);
        }
        cumulative[i].back() = 1.0;
    }

    SequentialRng rng(config.seed);
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    long long seq = 0;

    for (int i = 0; i < k; ++i)
        if (rates[i] > 0)
            events.push({rng.exponential(rates[i]), seq++, Event::Kind::Arrival, i});

    std::vector<std::deque<std::pair<long long, double>>> queues(n);  // (request, start)
    std::vector<Request> requests;
    std::vector<long long> subtask_arrivals(n, 0);
    std::vector<double> queue_area(n, 0);
    std::vector<double> last_change(n, warmup);
    double response_sum = 0;
    long long completed = 0, total_events = 0;

    SimReport report;
    double next_sample = warmup;

    auto start_service = [&](int server, double now) {
        double service = rng.exponential(mu);
        events.push({now + service, seq++, Event::Kind::Completion, server});
    };
    auto record_queue = [&](int server, double now) {
        if (now > warmup) {
            double from = std::max(last_change[server], warmup);
            queue_area[server] += double(queues[server].size()) * (now - from);
        }
        last_change[server] = now;
    };

    while (!events.empty()) {
        Event ev = events.top();
        events.pop();
        if (ev.time > config.horizon) break;
        ++total_events;

        while (next_sample <= ev.time && next_sample <= config.horizon) {
            QueueSample sample;
            sample.time = next_sample;
            sample.queue_lengths.resize(n);
            for (int s = 0; s < n; ++s) sample.queue_lengths[s] = int(queues[s].size());
            report.samples.push_back(std::move(sample));
            next_sample += config.sample_interval;
        }

        if (ev.kind == Event::Kind::Arrival) {
            const int object = ev.index;
            events.push({ev.time + rng.exponential(rates[object]), seq++,
                         Event::Kind::Arrival, object});
            double u = rng.uniform();
            int set_index = int(std::lower_bound(cumulative[object].begin(),
                                                 cumulative[object].end(), u) -
                                cumulative[object].begin());
            set_index = std::min(set_index, cat.count(object) - 1);
            const long long request_id = static_cast<long long>(requests.size());
            const auto& servers = cat.sets[object][set_index].servers;
            requests.push_back({ev.time, int(servers.size())});
            for (int s : servers) {
                record_queue(s, ev.time);
                if (ev.time > warmup) ++subtask_arrivals[s];
                queues[s].push_back({request_id, ev.time});
                if (queues[s].size() == 1) start_service(s, ev.time);
            }
        } else {
            const int server = ev.index;
            record_queue(server, ev.time);
            const long long request_id = queues[server].front().first;
            queues[server].pop_front();
            if (!queues[server].empty()) start_service(server, ev.time);
            Request& req = requests[request_id];
            if (--req.pending == 0 && req.arrival > warmup) {
                response_sum += ev.time - req.arrival;
                ++completed;
            }
        }
    }

    report.servers.resize(n);
    for (int s = 0; s < n; ++s) {
        record_queue(s, config.horizon);
        ServerStats& st = report.servers[s];
        st.subtask_arrival_rate = double(subtask_arrivals[s]) / measured_span;
        st.utilization = st.subtask_arrival_rate / mu;
        st.mean_queue_length = queue_area[s] / measured_span;
        st.stable = st.utilization < 1.0 - config.stability_margin;
    }
    // Least-squares slope of queue length against time per server.
    if (report.samples.size() >= 2) {
        const double m_count = double(report.samples.size());
        double mean_t = 0;
        for (const auto& s : report.samples) mean_t += s.time;
        mean_t /= m_count;
        double var_t = 0;
        for (const auto& s : report.samples) var_t += (s.time - mean_t) * (s.time - mean_t);
        for (int sv = 0; sv < n; ++sv) {
            double mean_q = 0;
            for (const auto& s : report.samples) mean_q += s.queue_lengths[sv];
            mean_q /= m_count;
            double cov = 0;
            for (const auto& s : report.samples)
                cov += (s.time - mean_t) * (s.queue_lengths[sv] - mean_q);
            report.servers[sv].drift_slope = var_t > 0 ? cov / var_t : 0;
        }
    }
    report.mean_response_time = completed > 0 ? response_sum / double(completed) : 0;
    report.completed_requests = completed;
    report.total_events = total_events;
    return report;
}

}  // namespace srr
