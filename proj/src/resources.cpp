#include "edgebench/resources.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace edgebench {

namespace {

constexpr std::int64_t kMaxReplaySamples = 1'000'000;

double process_cpu_seconds() {
    std::ifstream in("/proc/self/stat");
    std::string line;
    if (!std::getline(in, line)) return 0;
    // Fields after the parenthesised command name; utime and stime are 14 and 15.
    const auto close = line.rfind(')');
    if (close == std::string::npos) return 0;
    std::istringstream rest(line.substr(close + 2));
    std::string field;
    unsigned long long utime = 0, stime = 0;
    for (int i = 3; i <= 15 && rest >> field; ++i) {
        if (i == 14) utime = std::stoull(field);
        if (i == 15) stime = std::stoull(field);
    }
    return static_cast<double>(utime + stime) / static_cast<double>(sysconf(_SC_CLK_TCK));
}

double process_rss_mb() {
    std::ifstream in("/proc/self/status");
    std::string key;
    while (in >> key) {
        if (key == "VmRSS:") {
            double kb = 0;
            in >> kb;
            return kb / 1024.0;
        }
        in.ignore(1 << 12, '\n');
    }
    return 0;
}

}  // namespace

ResourceSummary replay_resources(const ResourceProfile& profile, Millis duration_ms, SeededRng& rng) {
    ResourceSummary s;
    s.label = "modeled";
    s.samples = std::clamp<std::int64_t>(duration_ms / 1000, 1, kMaxReplaySamples);
    const double cpu_cap = 100.0 * std::max(profile.cores, 1);
    double cpu = 0, ram = 0;
    for (std::int64_t i = 0; i < s.samples; ++i) {
        cpu += std::clamp(sample(profile.cpu_pct, rng), 0.0, cpu_cap);
        ram += std::max(0.0, sample(profile.ram_mb, rng) + profile.platform_ram_delta_mb);
    }
    s.cpu_pct_mean = cpu / static_cast<double>(s.samples);
    s.ram_mb_mean = ram / static_cast<double>(s.samples);
    return s;
}

ResourceSampler::ResourceSampler(std::chrono::milliseconds period) : period_(period) {}

ResourceSampler::~ResourceSampler() {
    if (worker_.joinable()) stop();
}

void ResourceSampler::start() {
    last_cpu_s_ = process_cpu_seconds();
    last_wall_ = std::chrono::steady_clock::now();
    stopping_ = false;
    worker_ = std::thread([this] { loop(); });
}

void ResourceSampler::loop() {
    std::unique_lock lock(mu_);
    while (!cv_.wait_for(lock, period_, [this] { return stopping_; })) sample_once();
}

void ResourceSampler::sample_once() {
    const double cpu_s = process_cpu_seconds();
    const auto wall = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(wall - last_wall_).count();
    if (elapsed > 0) cpu_sum_ += 100.0 * (cpu_s - last_cpu_s_) / elapsed;
    ram_sum_ += process_rss_mb();
    ++count_;
    last_cpu_s_ = cpu_s;
    last_wall_ = wall;
}

ResourceSummary ResourceSampler::stop() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    cv_.notify_all();
    if (worker_.joinable()) worker_.join();
    if (count_ == 0) sample_once();

    ResourceSummary s;
    s.label = "measured";
    s.samples = count_;
    s.cpu_pct_mean = cpu_sum_ / static_cast<double>(count_);
    s.ram_mb_mean = ram_sum_ / static_cast<double>(count_);
    return s;
}

}  // namespace edgebench
