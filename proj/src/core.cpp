#include "edgebench/core.hpp"

#include <cfenv>
#include <cmath>

#include "edgebench/error.hpp"

namespace edgebench {

Millis round_half_even(double ms) {
    // nearbyint honours the current rounding mode; pin it for determinism.
    const int saved = std::fegetround();
    std::fesetround(FE_TONEAREST);
    const double r = std::nearbyint(ms);
    std::fesetround(saved);
    return static_cast<Millis>(r);
}

Clock advance(Clock clock, Millis event_time) {
    if (clock.mode == ClockMode::virtual_time && event_time < clock.now) {
        throw TimeRegression("event at " + std::to_string(event_time) +
                             " ms precedes clock at " + std::to_string(clock.now) + " ms");
    }
    clock.now = event_time;
    return clock;
}

}  // namespace edgebench
