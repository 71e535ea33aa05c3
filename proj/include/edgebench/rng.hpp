#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace edgebench {

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard distribution objects are implementation-defined, so all
/// derived draws (uniform doubles, normals) are computed here instead:
///   - uniform01: top 53 bits of one engine output scaled by 2^-53, in [0, 1).
///   - normal: Marsaglia polar method, caching the second variate.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform index in [0, n). n must be > 0.
    std::uint64_t index(std::uint64_t n);
    double standard_normal();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Sub-seed for a named component: splitmix64(root ^ fnv1a64(name)).
/// Each component gets an independent stream, so adding a component never
/// shifts the draws of another.
std::uint64_t derive_seed(std::uint64_t root, std::string_view component);

}  // namespace edgebench
