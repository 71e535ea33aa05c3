#include "edgebench/distribution.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "edgebench/error.hpp"

namespace edgebench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidDistribution(std::string(what) + " is not finite");
}

// Rejection gives up after this many negative draws and returns 0.
constexpr int kMaxTruncationRetries = 1000;

}  // namespace

void validate(const Distribution& dist, bool non_negative) {
    std::visit(overloaded{
                   [&](const Constant& d) {
                       require_finite(d.value, "constant");
                       if (non_negative && d.value < 0)
                           throw InvalidDistribution("constant(" + std::to_string(d.value) + ") is negative");
                   },
                   [&](const Uniform& d) {
                       require_finite(d.lo, "uniform lower bound");
                       require_finite(d.hi, "uniform upper bound");
                       if (d.lo > d.hi)
                           throw InvalidDistribution("uniform bounds reversed: a > b");
                       if (non_negative && d.lo < 0)
                           throw InvalidDistribution("uniform lower bound is negative");
                   },
                   [&](const Normal& d) {
                       require_finite(d.mean, "normal mean");
                       require_finite(d.stddev, "normal sigma");
                       if (d.stddev < 0) throw InvalidDistribution("normal sigma < 0");
                   },
                   [&](const Empirical& d) {
                       if (d.values.empty()) throw InvalidDistribution("empirical list is empty");
                       for (double v : d.values) {
                           require_finite(v, "empirical value");
                           if (non_negative && v < 0)
                               throw InvalidDistribution("empirical value is negative");
                       }
                   },
               },
               dist);
}

double sample(const Distribution& dist, SeededRng& rng) {
    return std::visit(overloaded{
                          [](const Constant& d) { return d.value; },
                          [&](const Uniform& d) {
                              if (d.lo > d.hi) throw InvalidDistribution("uniform bounds reversed: a > b");
                              return d.lo == d.hi ? d.lo : rng.uniform(d.lo, d.hi);
                          },
                          [&](const Normal& d) {
                              if (d.stddev < 0) throw InvalidDistribution("normal sigma < 0");
                              if (d.stddev == 0) return std::max(d.mean, 0.0);
                              for (int i = 0; i < kMaxTruncationRetries; ++i) {
                                  const double x = d.mean + d.stddev * rng.standard_normal();
                                  if (x >= 0) return x;
                              }
                              return 0.0;
                          },
                          [&](const Empirical& d) {
                              if (d.values.empty()) throw InvalidDistribution("empirical list is empty");
                              return d.values[rng.index(d.values.size())];
                          },
                      },
                      dist);
}

Millis sample_ms(const Distribution& dist, SeededRng& rng) {
    return round_half_even(sample(dist, rng));
}

std::int64_t sample_bytes(const Distribution& dist, SeededRng& rng) {
    return round_half_even(sample(dist, rng));
}

double expectation(const Distribution& dist) {
    return std::visit(overloaded{
                          [](const Constant& d) { return d.value; },
                          [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                          [](const Normal& d) {
                              if (d.stddev == 0) return std::max(d.mean, 0.0);
                              // Mean of N(mu, sigma) conditioned on x >= 0.
                              const double alpha = -d.mean / d.stddev;
                              const double pdf = std::exp(-0.5 * alpha * alpha) / std::sqrt(2 * std::numbers::pi);
                              const double tail = 0.5 * std::erfc(alpha / std::numbers::sqrt2);
                              return tail > 0 ? d.mean + d.stddev * pdf / tail : 0.0;
                          },
                          [](const Empirical& d) {
                              if (d.values.empty()) return 0.0;
                              return std::accumulate(d.values.begin(), d.values.end(), 0.0) /
                                     static_cast<double>(d.values.size());
                          },
                      },
                      dist);
}

std::string describe(const Distribution& dist) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Constant& d) { os << "constant(" << d.value << ")"; },
                   [&](const Uniform& d) { os << "uniform(" << d.lo << "," << d.hi << ")"; },
                   [&](const Normal& d) { os << "normal(" << d.mean << "," << d.stddev << ")"; },
                   [&](const Empirical& d) { os << "empirical[" << d.values.size() << "]"; },
               },
               dist);
    return os.str();
}

}  // namespace edgebench
