#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "edgebench/core.hpp"
#include "edgebench/distribution.hpp"
#include "edgebench/rng.hpp"

namespace edgebench {

enum class WorkloadKind { scalar, image, audio, custom };

std::string to_string(WorkloadKind kind);
WorkloadKind workload_kind_from_string(const std::string& s);

/// Benchmark driver definition. Distributions stand in for the real
/// decoders/classifiers: compute time and payload size are drawn per item.
struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::custom;
    std::int64_t items = 1;
    std::int64_t devices = 1;
    Distribution input_bytes_per_item = Constant{0};
    Distribution compute_ms = Constant{0};
    Distribution result_payload_bytes = Constant{0};
    Distribution inter_item_gap_ms = Constant{0};
    double scalar_freq_hz = 0;
    double scalar_interval_s = 0;
    double warmup_delay_s = 0;

    friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

/// Throws ValidationError (or InvalidRate / InvalidDistribution) when the
/// spec breaks its invariants.
void validate(const WorkloadSpec& spec);

struct ComputeRecord {
    std::int64_t item_index = 0;
    Millis c_edge_ms = 0;
    std::int64_t payload_bytes = 0;
    std::int64_t input_bytes = 0;

    friend bool operator==(const ComputeRecord&, const ComputeRecord&) = default;
};

/// Edge resource usage, replayed into reports in virtual mode.
struct ResourceProfile {
    Distribution cpu_pct = Constant{0};
    Distribution ram_mb = Constant{0};
    double platform_ram_delta_mb = 0;
    int cores = 4;

    friend bool operator==(const ResourceProfile&, const ResourceProfile&) = default;
};

/// Number of characters one scalar value occupies in a batch body.
inline constexpr int kScalarValueWidth = 8;

/// Serialized JSON body length of a batch holding `count` values.
std::int64_t scalar_body_bytes(std::int64_t count);

/// One sensor batch: floor(freq_hz * interval_s) values uniform in [0, 1),
/// serialized as a JSON array with six decimals. Empty batches are still
/// emitted. t1 is left unset.
Message generate_scalar_batch(double freq_hz, double interval_s, SeededRng& rng);

/// Runs item `idx` starting at clock.now. The message carries
/// t1 = edge_stamp(clock.now + c_edge) and id = idx.
std::pair<ComputeRecord, Message> run_item(const WorkloadSpec& spec, std::int64_t idx,
                                           const Clock& clock, SeededRng& rng);

struct WorkloadTotals {
    double input_bytes = 0;
    double payload_bytes = 0;
};

/// Expected totals over every item of every device; exact for constants.
WorkloadTotals workload_totals(const WorkloadSpec& spec);

/// Output of an externally supplied per-item function (live mode). When
/// `compute_ms` is empty the wall time spent inside the function is used.
struct ItemOutput {
    std::string body;
    std::optional<Millis> compute_ms;
};
using ItemFunction = std::function<ItemOutput(std::int64_t item_index)>;

/// Drives one device's items sequentially. Items never overlap: the next
/// item starts no earlier than the previous send.
class WorkloadDriver {
public:
    struct Emission {
        ComputeRecord record;
        Message message;
        Millis send_time = 0;   // true (unskewed) send instant
    };

    WorkloadDriver(WorkloadSpec spec, std::string source, std::uint64_t id_offset,
                   std::uint64_t id_stride, SeededRng rng);

    bool done() const { return next_index_ >= spec_.items; }
    Millis next_start() const { return next_start_; }
    const std::string& source() const { return source_; }

    /// Runs the next item; `clock.now` must equal next_start().
    Emission run_next(const Clock& clock);

private:
    WorkloadSpec spec_;
    std::string source_;
    std::uint64_t id_offset_;
    std::uint64_t id_stride_;
    SeededRng rng_;
    std::int64_t next_index_ = 0;
    Millis next_start_ = 0;
};

}  // namespace edgebench
