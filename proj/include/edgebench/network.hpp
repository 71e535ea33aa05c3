#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "edgebench/core.hpp"
#include "edgebench/distribution.hpp"
#include "edgebench/rng.hpp"

namespace edgebench {

/// Edge-to-cloud link. An empty bandwidth means unlimited (no serialization
/// delay).
struct LinkModel {
    Distribution propagation_ms = Constant{0};
    std::optional<double> bandwidth_bytes_per_s;
    std::int64_t per_message_overhead_bytes = 0;
    double drop_probability = 0;

    friend bool operator==(const LinkModel&, const LinkModel&) = default;
};

void validate(const LinkModel& link);

/// ceil(bytes * 1000 / bandwidth) in whole ms; 0 for an unlimited link.
Millis serialization_ms(std::int64_t bytes, const LinkModel& link);

struct ByteTotals {
    std::int64_t payload_bytes = 0;
    std::int64_t overhead_bytes = 0;
    std::int64_t transmitted_bytes = 0;
    std::int64_t messages = 0;

    friend bool operator==(const ByteTotals&, const ByteTotals&) = default;
};

/// Per-source byte accounting. transmitted == payload + overhead after
/// every record().
class ByteLedger {
public:
    void record(const std::string& source, std::int64_t payload, std::int64_t overhead);

    const std::map<std::string, ByteTotals>& by_source() const { return per_source_; }
    ByteTotals totals() const;
    bool empty() const { return per_source_.empty(); }

private:
    std::map<std::string, ByteTotals> per_source_;
};

struct LedgerReport {
    std::map<std::string, ByteTotals> sources;
    ByteTotals total;

    friend bool operator==(const LedgerReport&, const LedgerReport&) = default;
};

LedgerReport ledger_report(const ByteLedger& ledger);

/// Stamps the link's framing overhead onto a message.
void frame(Message& msg, const LinkModel& link);

/// Arrival = send_time + propagation + serialization of the message's wire
/// bytes. Returns nullopt when the message is dropped; only delivered
/// messages reach the ledger. Draw order per call: propagation, then the
/// drop variate.
std::optional<Millis> deliver(const Message& msg, const LinkModel& link, Millis send_time,
                              SeededRng& rng, ByteLedger& ledger);

/// A link with per-source FIFO ordering: a message never arrives before an
/// earlier message from the same source.
class Link {
public:
    Link(LinkModel model, SeededRng rng) : model_(std::move(model)), rng_(rng) {}

    std::optional<Millis> deliver(const Message& msg, Millis send_time);

    const LinkModel& model() const { return model_; }
    const ByteLedger& ledger() const { return ledger_; }
    ByteLedger& ledger() { return ledger_; }

private:
    LinkModel model_;
    SeededRng rng_;
    ByteLedger ledger_;
    std::map<std::string, Millis> last_arrival_;
};

}  // namespace edgebench
