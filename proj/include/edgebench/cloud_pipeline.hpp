#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgebench/core.hpp"
#include "edgebench/distribution.hpp"
#include "edgebench/network.hpp"
#include "edgebench/rng.hpp"
#include "edgebench/storage.hpp"
#include "edgebench/workloads.hpp"

namespace edgebench {

/// Serverless function triggered by a raw-input upload.
struct CloudFunctionProfile {
    Distribution trigger_overhead_ms = Constant{0};   // trigger + runtime/library load
    Distribution exec_ms = Constant{0};
    Distribution result_write_ms = Constant{0};
    double memory_mb = 128;
    Distribution inter_upload_gap_s = Constant{0};    // pacing between uploads

    friend bool operator==(const CloudFunctionProfile&, const CloudFunctionProfile&) = default;
};

void validate(const CloudFunctionProfile& profile);

/// One cloud-only item with its latency decomposition. In virtual time
/// e2e = upload + trigger + exec + write exactly (c_edge is 0).
struct CloudItem {
    Message upload;             // raw input as sent by the device
    TimestampRecord stamps;     // t1 upload start, t2 upload complete, t3 result blob
    Millis upload_ms = 0;
    Millis trigger_ms = 0;
    Millis exec_ms = 0;
    Millis write_ms = 0;
    std::int64_t input_bytes = 0;
    std::int64_t result_bytes = 0;
    Millis upload_start = 0;    // true (unskewed) start
};

/// Runs item `idx` starting its upload at clock.now and records its bytes
/// (input + result as payload, link overhead as overhead) in `ledger`.
/// Uploads are not subject to the link's drop probability.
CloudItem run_cloud_item(const WorkloadSpec& spec, std::int64_t idx, const CloudFunctionProfile& profile,
                         const LinkModel& link, const Clock& clock, SeededRng& rng, ByteLedger& ledger,
                         const std::string& source = "edge-0");

/// Expected device bytes for a whole run: per item, input + result + link
/// overhead. Exact for constant distributions.
double cloud_bandwidth(const WorkloadSpec& spec, const LinkModel& link);

/// Sequential cloud-only run of one device. The next upload starts after
/// the previous upload completed plus a pacing gap, and never before the
/// previous invocation finished (one in-flight function at a time).
class CloudPipeline {
public:
    CloudPipeline(WorkloadSpec spec, CloudFunctionProfile profile, LinkModel link, std::string source,
                  std::uint64_t id_offset, std::uint64_t id_stride, SeededRng rng);

    bool done() const { return next_index_ >= spec_.items; }
    Millis next_start() const { return next_start_; }

    CloudItem run_next(const Clock& clock, ByteLedger& ledger);

private:
    WorkloadSpec spec_;
    CloudFunctionProfile profile_;
    LinkModel link_;
    std::string source_;
    std::uint64_t id_offset_;
    std::uint64_t id_stride_;
    SeededRng rng_;
    std::int64_t next_index_ = 0;
    Millis next_start_ = 0;
};

}  // namespace edgebench
