#pragma once

// Reference computations written independently of the library, used to
// cross-check its results. Slow and obvious on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

/// Mean rounded to the nearest integer, ties to even, via 128-bit exact sum.
inline std::int64_t mean_rounded(const std::vector<std::int64_t>& v) {
    __int128 sum = 0;
    for (auto x : v) sum += x;
    const __int128 n = static_cast<__int128>(v.size());
    __int128 q = sum / n;
    __int128 r = sum % n;
    if (r < 0) {
        r += n;
        q -= 1;
    }
    if (2 * r > n || (2 * r == n && (q & 1) != 0)) q += 1;
    return static_cast<std::int64_t>(q);
}

inline double mean(const std::vector<std::int64_t>& v) {
    long double sum = 0;
    for (auto x : v) sum += x;
    return static_cast<double>(sum / static_cast<long double>(v.size()));
}

/// Nearest-rank percentile by counting: the smallest sample x such that at
/// least p% of the samples are <= x.
inline std::int64_t percentile(std::vector<std::int64_t> v, int p) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (100 * (i + 1) >= static_cast<std::size_t>(p) * v.size()) return v[i];
    }
    return v.back();
}

inline double stddev(const std::vector<double>& v) {
    long double m = 0;
    for (double x : v) m += x;
    m /= v.size();
    long double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return static_cast<double>(std::sqrt(ss / (v.size() - 1)));
}

/// Event-level batching: walk the window boundaries one by one and assign
/// each arrival (sorted) to the first boundary at or after it. Returns the
/// residence t3 - t2 of each message.
inline std::vector<std::int64_t> batched_residence(const std::vector<std::int64_t>& arrivals,
                                                   std::int64_t route_created, std::int64_t window_ms,
                                                   std::int64_t holdback_ms) {
    std::vector<std::int64_t> out;
    std::int64_t boundary = route_created + window_ms;
    for (std::int64_t t2 : arrivals) {
        while (boundary < t2) boundary += window_ms;
        out.push_back(boundary + holdback_ms - t2);
    }
    return out;
}

/// Serialization delay by repeated subtraction: the number of whole
/// milliseconds needed to push `bytes` through a link of `bps` bytes/s.
inline std::int64_t serialization_ms(std::int64_t bytes, std::int64_t bps) {
    std::int64_t ms = 0;
    std::int64_t sent_scaled = 0;  // bytes * 1000 already pushed
    while (sent_scaled < bytes * 1000) {
        sent_scaled += bps;
        ++ms;
    }
    return ms;
}

}  // namespace oracle
