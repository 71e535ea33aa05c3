#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace edgebench {

/// Pipeline time in integer milliseconds.
using Millis = std::int64_t;

/// Rounds a fractional millisecond value to the integer clock, ties to even.
Millis round_half_even(double ms);

/// One edge-to-cloud result message.
struct Message {
    std::uint64_t id = 0;          // strictly increasing per source
    std::string source;
    std::int64_t payload_bytes = 0;
    std::int64_t overhead_bytes = 0;
    std::string body;
    std::optional<Millis> t1;      // edge send stamp, includes edge skew

    std::int64_t wire_bytes() const { return payload_bytes + overhead_bytes; }

    friend bool operator==(const Message&, const Message&) = default;
};

/// The three pipeline stamps plus edge compute duration. Unset stamps mean
/// the message never reached that stage (e.g. dropped in flight).
struct TimestampRecord {
    std::optional<Millis> t1;
    std::optional<Millis> t2;
    std::optional<Millis> t3;
    Millis c_edge = 0;

    bool complete() const { return t1 && t2 && t3; }

    friend bool operator==(const TimestampRecord&, const TimestampRecord&) = default;
};

enum class ClockMode { virtual_time, wall };

/// Pipeline clock. In virtual mode `now` only moves forward via advance().
/// `skew_edge_ms` is added to stamps written by edge components and never
/// influences event ordering.
struct Clock {
    ClockMode mode = ClockMode::virtual_time;
    Millis now = 0;
    Millis skew_edge_ms = 0;

    Millis edge_stamp(Millis true_time) const { return true_time + skew_edge_ms; }
};

/// Returns `clock` moved to `event_time`. Throws TimeRegression when the
/// event lies in the past.
Clock advance(Clock clock, Millis event_time);

}  // namespace edgebench
