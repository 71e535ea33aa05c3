#pragma once

#include <string>
#include <variant>
#include <vector>

#include "edgebench/core.hpp"
#include "edgebench/rng.hpp"

namespace edgebench {

struct Constant {
    double value = 0.0;
    friend bool operator==(const Constant&, const Constant&) = default;
};

struct Uniform {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Uniform&, const Uniform&) = default;
};

/// Normal truncated at zero: negative draws are rejected and redrawn.
struct Normal {
    double mean = 0.0;
    double stddev = 0.0;
    friend bool operator==(const Normal&, const Normal&) = default;
};

/// Uniform choice among the listed values.
struct Empirical {
    std::vector<double> values;
    friend bool operator==(const Empirical&, const Empirical&) = default;
};

using Distribution = std::variant<Constant, Uniform, Normal, Empirical>;

/// Throws InvalidDistribution when parameters are malformed (lo > hi,
/// negative stddev, empty empirical list, non-finite values) or, with
/// `non_negative`, when the support can reach below zero.
void validate(const Distribution& dist, bool non_negative = true);

double sample(const Distribution& dist, SeededRng& rng);

/// sample() rounded half-to-even onto the integer millisecond clock.
Millis sample_ms(const Distribution& dist, SeededRng& rng);

/// sample() rounded half-to-even to whole bytes.
std::int64_t sample_bytes(const Distribution& dist, SeededRng& rng);

/// Expected value of one draw (truncation-aware for Normal).
double expectation(const Distribution& dist);

std::string describe(const Distribution& dist);

}  // namespace edgebench
