#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>

#include "edgebench/core.hpp"
#include "edgebench/rng.hpp"
#include "edgebench/workloads.hpp"

namespace edgebench {

struct ResourceSummary {
    std::string label;          // "modeled" or "measured"
    double cpu_pct_mean = 0;
    double ram_mb_mean = 0;
    std::int64_t samples = 0;

    friend bool operator==(const ResourceSummary&, const ResourceSummary&) = default;
};

/// Replays a profile at one sample per simulated second of `duration_ms`
/// (at least one sample). CPU draws are clamped to [0, 100 * cores]; RAM
/// draws get the platform delta added and are floored at 0.
ResourceSummary replay_resources(const ResourceProfile& profile, Millis duration_ms, SeededRng& rng);

/// Samples this process's CPU% and RSS from /proc at a fixed cadence on a
/// background thread until stop().
class ResourceSampler {
public:
    explicit ResourceSampler(std::chrono::milliseconds period = std::chrono::seconds(1));
    ~ResourceSampler();

    ResourceSampler(const ResourceSampler&) = delete;
    ResourceSampler& operator=(const ResourceSampler&) = delete;

    void start();
    ResourceSummary stop();

private:
    void loop();
    void sample_once();

    std::chrono::milliseconds period_;
    std::thread worker_;
    std::mutex mu_;
    std::condition_variable cv_;
    bool stopping_ = false;
    double cpu_sum_ = 0;
    double ram_sum_ = 0;
    std::int64_t count_ = 0;
    double last_cpu_s_ = 0;
    std::chrono::steady_clock::time_point last_wall_;
};

}  // namespace edgebench
