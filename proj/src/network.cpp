#include "edgebench/network.hpp"

#include <cmath>

#include "edgebench/error.hpp"

namespace edgebench {

void validate(const LinkModel& link) {
    validate(link.propagation_ms);
    if (link.bandwidth_bytes_per_s && !(*link.bandwidth_bytes_per_s > 0))
        throw ValidationError("link.bandwidth_bytes_per_s must be > 0 when bounded");
    if (link.per_message_overhead_bytes < 0)
        throw ValidationError("link.per_message_overhead_bytes must be >= 0");
    if (!(link.drop_probability >= 0 && link.drop_probability <= 1))
        throw ValidationError("link.drop_probability must lie in [0, 1]");
}

Millis serialization_ms(std::int64_t bytes, const LinkModel& link) {
    if (!link.bandwidth_bytes_per_s || bytes <= 0) return 0;
    const double bw = *link.bandwidth_bytes_per_s;
    const double whole = std::floor(bw);
    if (whole == bw && bw < 9.0e15) {
        // Exact integer ceiling division for integral bandwidths.
        const auto b = static_cast<std::int64_t>(bw);
        const std::int64_t num = bytes * 1000;
        return (num + b - 1) / b;
    }
    return static_cast<Millis>(std::ceil(static_cast<double>(bytes) * 1000.0 / bw));
}

void ByteLedger::record(const std::string& source, std::int64_t payload, std::int64_t overhead) {
    auto& t = per_source_[source];
    t.payload_bytes += payload;
    t.overhead_bytes += overhead;
    t.transmitted_bytes = t.payload_bytes + t.overhead_bytes;
    ++t.messages;
}

ByteTotals ByteLedger::totals() const {
    ByteTotals sum;
    for (const auto& [_, t] : per_source_) {
        sum.payload_bytes += t.payload_bytes;
        sum.overhead_bytes += t.overhead_bytes;
        sum.messages += t.messages;
    }
    sum.transmitted_bytes = sum.payload_bytes + sum.overhead_bytes;
    return sum;
}

LedgerReport ledger_report(const ByteLedger& ledger) {
    return LedgerReport{ledger.by_source(), ledger.totals()};
}

void frame(Message& msg, const LinkModel& link) {
    msg.overhead_bytes = link.per_message_overhead_bytes;
}

std::optional<Millis> deliver(const Message& msg, const LinkModel& link, Millis send_time,
                              SeededRng& rng, ByteLedger& ledger) {
    const Millis propagation = sample_ms(link.propagation_ms, rng);
    const bool dropped = rng.uniform01() < link.drop_probability;
    if (dropped) return std::nullopt;
    ledger.record(msg.source, msg.payload_bytes, msg.overhead_bytes);
    return send_time + propagation + serialization_ms(msg.wire_bytes(), link);
}

std::optional<Millis> Link::deliver(const Message& msg, Millis send_time) {
    auto arrival = edgebench::deliver(msg, model_, send_time, rng_, ledger_);
    if (!arrival) return arrival;
    auto [it, inserted] = last_arrival_.try_emplace(msg.source, *arrival);
    if (!inserted) {
        *arrival = std::max(*arrival, it->second);
        it->second = *arrival;
    }
    return arrival;
}

}  // namespace edgebench
