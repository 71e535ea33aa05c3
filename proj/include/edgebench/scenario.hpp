#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edgebench/config.hpp"
#include "edgebench/event_queue.hpp"
#include "edgebench/hub.hpp"
#include "edgebench/metrics.hpp"
#include "edgebench/storage.hpp"
#include "edgebench/workloads.hpp"

namespace edgebench {

/// Per-message bookkeeping from emission to blob.
struct TrackedMessage {
    std::string source;
    TimestampRecord stamps;
    std::int64_t payload_bytes = 0;
};

using MessageTable = std::map<std::uint64_t, TrackedMessage>;

/// Hub plus blob store driven by timed events (arrivals, flush timers, blob
/// creations). Shared by the virtual and live runners.
class HubBackend {
public:
    HubBackend(HubPolicy policy, std::string route, Millis route_created, SeededRng rng, BlobStore& store,
               MessageTable& table);

    void arrive(Message msg, Millis arrival);
    std::optional<Millis> next_time() const { return queue_.next_time(); }
    /// Processes the earliest pending event; returns its time.
    Millis step();
    /// Flushes any batch still open and queues its blob.
    void drain();

    const Hub& hub() const { return hub_; }

private:
    struct Arrival {
        Message msg;
    };
    struct FlushTimer {};
    struct CreateBlob {
        BlobWrite write;
    };
    using Payload = std::variant<Arrival, FlushTimer, CreateBlob>;

    void schedule(std::vector<BlobWrite> writes);

    Hub hub_;
    BlobStore& store_;
    MessageTable& table_;
    EventQueue<Payload> queue_;
};

/// Sub-seed labels; every component draws from its own stream.
std::uint64_t component_seed(std::uint64_t root, const std::string& component);

struct RunOptions {
    std::optional<std::filesystem::path> persist_blobs;
    ItemFunction item_function;     // live mode only
};

struct ScenarioRun {
    RunReport report;
    std::vector<BlobRecord> blobs;
    MessageTable messages;
    std::map<std::string, std::vector<std::uint64_t>> blob_contents;
};

/// Runs a validated scenario in the configured mode. Messages that never
/// reach a blob are counted in report.incomplete rather than thrown.
ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

ScenarioRun run_virtual(const ScenarioConfig& config, const RunOptions& options = {});
ScenarioRun run_live(const ScenarioConfig& config, const RunOptions& options = {});

/// Builds rows and the report from a finished run's message table.
RunReport build_report(const ScenarioConfig& config, const MessageTable& messages, const LedgerReport& bytes,
                       std::optional<ResourceSummary> resources, std::optional<HubSummary> hub);

/// Writes report.json, metrics.csv and charts/*.svg into `out_dir`.
void write_artifacts(const RunReport& report, const std::filesystem::path& out_dir);

/// Writes one chart per metric over several reports into `out_dir`.
void write_charts(std::span<const RunReport> reports, const std::filesystem::path& out_dir);

RunReport load_report(const std::filesystem::path& path);

}  // namespace edgebench
