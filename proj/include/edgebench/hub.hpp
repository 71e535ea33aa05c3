#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgebench/core.hpp"
#include "edgebench/distribution.hpp"
#include "edgebench/rng.hpp"
#include "edgebench/storage.hpp"

namespace edgebench {

enum class HubMode { immediate, batched };

std::string to_string(HubMode mode);
HubMode hub_mode_from_string(const std::string& s);

/// Minimum batching window and chunk size of the batched platform.
inline constexpr double kMinWindowSeconds = 60.0;
inline constexpr std::int64_t kMinChunkBytes = 10LL * 1024 * 1024;

struct HubPolicy {
    HubMode mode = HubMode::immediate;
    std::optional<double> window_s;
    std::optional<std::int64_t> chunk_bytes;
    double holdback_s = 0;
    Distribution write_latency_ms = Constant{0};
    bool platform_faithful = false;

    friend bool operator==(const HubPolicy&, const HubPolicy&) = default;
};

/// Throws ValidationError. Batched mode needs a window or a chunk size; with
/// platform_faithful set, the platform minimums are enforced too.
void validate(const HubPolicy& policy);

struct HubRecord {
    std::uint64_t message_id = 0;
    std::string source;
    Millis t2 = 0;
    std::optional<Millis> flush_time;
    std::optional<Millis> t3;

    std::optional<Millis> residence_ms() const {
        return t3 ? std::optional<Millis>(*t3 - t2) : std::nullopt;
    }
};

/// A blob the hub wants created at `created_at`.
struct BlobWrite {
    std::string name;
    Millis created_at = 0;
    std::optional<Millis> flush_time;
    std::vector<StoredMessage> messages;
};

/// Per-message write: t3 = t2 + one write-latency draw.
BlobWrite route_immediate(const StoredMessage& msg, const HubPolicy& policy, SeededRng& rng,
                          std::string name);

/// Window boundary that closes the batch containing a message enqueued at
/// `t2`. Windows tile time from `route_created` in steps of `window_ms`;
/// a message exactly on a boundary joins the batch closing there, and the
/// first window is (route_created, route_created + window].
Millis window_close_time(Millis route_created, Millis t2, Millis window_ms);

/// Writes a closed batch: t3 = flush_time + holdback. Messages keep t2 order.
BlobWrite route_batched(std::vector<StoredMessage> msgs, const HubPolicy& policy, Millis flush_time,
                        std::string name);

/// Cloud ingestion service. Stamps T2 on arrival and routes messages to
/// storage under the configured policy. The caller owns the event loop:
/// it schedules a timer at every `flush_at` returned and calls on_timer().
class Hub {
public:
    struct IngestResult {
        HubRecord record;
        std::vector<BlobWrite> writes;     // blobs ready to be created
        std::optional<Millis> flush_at;    // timer to schedule, batched mode
    };

    Hub(HubPolicy policy, std::string route, Millis created_at, SeededRng rng);

    IngestResult ingest(const Message& msg, Millis arrival);

    /// Closes the open batch if its window boundary is <= now.
    std::vector<BlobWrite> on_timer(Millis now);

    /// Closes any open batch at its window boundary (end of run).
    std::vector<BlobWrite> drain();

    const HubPolicy& policy() const { return policy_; }
    const std::string& route() const { return route_; }
    const std::vector<HubRecord>& records() const { return records_; }
    std::size_t blobs_emitted() const { return flush_ordinal_; }

private:
    struct OpenBatch {
        std::vector<StoredMessage> messages;
        std::vector<std::size_t> record_index;
        std::int64_t bytes = 0;
        std::optional<Millis> deadline;
    };

    BlobWrite close_batch(Millis flush_time);
    std::string next_name(std::uint64_t first_id);

    HubPolicy policy_;
    std::string route_;
    Millis created_at_;
    SeededRng rng_;
    std::vector<HubRecord> records_;
    std::optional<OpenBatch> open_;
    std::uint64_t flush_ordinal_ = 0;
};

}  // namespace edgebench
