#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "edgebench/core.hpp"
#include "edgebench/network.hpp"
#include "edgebench/resources.hpp"

namespace edgebench {

/// Per-message metrics:
///   flight    = t2 - t1
///   residence = t3 - t2
///   e2e       = c_edge + (t3 - t1) = c_edge + flight + residence
struct MetricRow {
    std::uint64_t id = 0;
    Millis c_edge_ms = 0;
    Millis t1 = 0;
    Millis t2 = 0;
    Millis t3 = 0;
    Millis flight_ms = 0;
    Millis residence_ms = 0;
    Millis e2e_ms = 0;
    std::int64_t payload_bytes = 0;

    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

/// Throws IncompleteRecord when any stamp is missing.
MetricRow finalize_row(std::uint64_t id, const TimestampRecord& ts, std::int64_t payload_bytes);

struct Aggregate {
    std::int64_t count = 0;
    double mean = 0;
    std::int64_t median = 0;    // nearest-rank
    std::int64_t p95 = 0;       // nearest-rank
    std::int64_t min = 0;
    std::int64_t max = 0;

    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

/// Nearest-rank percentile of a sorted sample: element ceil(p/100 * n).
std::int64_t nearest_rank(std::span<const std::int64_t> sorted, int percent);

/// Throws EmptyRun on an empty sample.
Aggregate summarize(std::vector<std::int64_t> values);

inline constexpr std::string_view kMetricNames[] = {"c_edge_ms", "flight_ms", "residence_ms", "e2e_ms",
                                                     "payload_bytes"};

struct HubSummary {
    std::string mode;
    std::int64_t blobs = 0;
    std::int64_t messages = 0;

    friend bool operator==(const HubSummary&, const HubSummary&) = default;
};

/// Everything needed to reproduce and plot one run.
struct RunReport {
    int schema = 1;
    std::uint64_t seed = 0;
    std::string pipeline;           // edge | cloud
    std::string platform_profile;
    std::string provider;
    std::string workload;
    std::string mode;               // virtual | live
    nlohmann::json config;          // fully resolved scenario config
    std::string config_fingerprint;
    std::map<std::string, Aggregate> metrics;
    LedgerReport bandwidth;
    std::optional<ResourceSummary> resources;
    std::optional<HubSummary> hub;
    std::int64_t emitted = 0;
    std::int64_t incomplete = 0;
    std::vector<MetricRow> rows;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Aggregates every metric over `rows` (mean, nearest-rank median and p95)
/// and copies the byte totals. Throws EmptyRun when rows is empty.
RunReport aggregate(std::span<const MetricRow> rows, const LedgerReport& bytes = {});

/// Pools several runs of one scenario into a single report.
RunReport merge_runs(std::span<const RunReport> runs);

/// FNV-1a 64 over the compact dump of `config`, as 16 hex digits.
std::string fingerprint(const nlohmann::json& config);

enum class ExportFormat { csv, json, svg_chart };

/// Accepts "csv", "json" and "svg-chart"; throws UnsupportedFormat otherwise.
ExportFormat export_format_from_string(const std::string& s);

inline constexpr std::string_view kCsvHeader =
    "id,c_edge_ms,t1,t2,t3,flight_ms,residence_ms,e2e_ms,payload_bytes";

std::string export_report(const RunReport& report, ExportFormat format);
std::string export_report(const RunReport& report, const std::string& format);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

}  // namespace edgebench
