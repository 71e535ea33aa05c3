#include "edgebench/scenario.hpp"

#include <fstream>
#include <sstream>

#include "edgebench/charts.hpp"
#include "edgebench/cloud_pipeline.hpp"
#include "edgebench/error.hpp"
#include "edgebench/network.hpp"
#include "edgebench/resources.hpp"

namespace edgebench {

namespace fs = std::filesystem;

namespace {

// Same-instant ordering inside the hub: arrivals join a batch before its
// boundary timer closes it.
constexpr int kArrivalPriority = 0;
constexpr int kFlushPriority = 1;
constexpr int kBlobPriority = 2;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IoError", "cannot write " + path.string());
    out << contents;
}

}  // namespace

HubBackend::HubBackend(HubPolicy policy, std::string route, Millis route_created, SeededRng rng, BlobStore& store,
                       MessageTable& table)
    : hub_(std::move(policy), std::move(route), route_created, rng), store_(store), table_(table) {}

void HubBackend::arrive(Message msg, Millis arrival) {
    queue_.push(arrival, kArrivalPriority, Arrival{std::move(msg)});
}

void HubBackend::schedule(std::vector<BlobWrite> writes) {
    for (auto& w : writes) {
        const Millis at = w.created_at;
        queue_.push(at, kBlobPriority, CreateBlob{std::move(w)});
    }
}

Millis HubBackend::step() {
    auto e = queue_.pop();
    std::visit(overloaded{
                   [&](Arrival& a) {
                       auto res = hub_.ingest(a.msg, e.time);
                       table_[a.msg.id].stamps.t2 = e.time;
                       schedule(std::move(res.writes));
                       if (res.flush_at) queue_.push(*res.flush_at, kFlushPriority, FlushTimer{});
                   },
                   [&](FlushTimer&) { schedule(hub_.on_timer(e.time)); },
                   [&](CreateBlob& c) {
                       const auto& rec = store_.create_blob(c.write.name, c.write.messages, c.write.created_at);
                       for (auto id : rec.message_ids) table_[id].stamps.t3 = rec.created_at;
                   },
               },
               e.payload);
    return e.time;
}

void HubBackend::drain() { schedule(hub_.drain()); }

std::uint64_t component_seed(std::uint64_t root, const std::string& component) {
    return derive_seed(root, component);
}

ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    validate(config);
    return config.mode == RunMode::live ? run_live(config, options) : run_virtual(config, options);
}

namespace {

struct ItemStart {
    std::size_t device;
};
struct Send {
    std::size_t device;
    Message msg;
};
struct CloudBlob {
    std::string name;
    StoredMessage msg;
};
using DeviceEvent = std::variant<ItemStart, Send, CloudBlob>;

ScenarioRun finish(const ScenarioConfig& config, BlobStore& store, MessageTable&& table, const LedgerReport& bytes,
                   Millis active_ms, std::optional<HubSummary> hub) {
    std::optional<ResourceSummary> resources;
    if (config.resources) {
        SeededRng rng(component_seed(*config.seed, "resources"));
        resources = replay_resources(*config.resources, active_ms, rng);
    }
    if (hub) hub->blobs = static_cast<std::int64_t>(store.size());

    ScenarioRun run;
    run.report = build_report(config, table, bytes, resources, hub);
    run.blobs = store.list_blobs();
    for (const auto& b : run.blobs) {
        auto& ids = run.blob_contents[b.name];
        for (const auto& m : store.contents(b.name)) ids.push_back(m.id);
    }
    run.messages = std::move(table);
    return run;
}

}  // namespace

ScenarioRun run_virtual(const ScenarioConfig& config, const RunOptions& options) {
    if (!config.seed) throw ValidationError("seed is required in virtual mode");
    const std::uint64_t root = *config.seed;
    const auto& spec = config.workload;
    const auto devices = static_cast<std::size_t>(spec.devices);
    const std::string route = to_string(spec.kind);

    BlobStore store(config.blob_envelope_bytes, options.persist_blobs);
    MessageTable table;
    Clock clock{ClockMode::virtual_time, 0, config.skew_edge_ms};
    EventQueue<DeviceEvent> events;
    Millis active_until = 0;

    if (config.pipeline == PipelineKind::cloud) {
        ByteLedger ledger;
        std::vector<CloudPipeline> pipelines;
        for (std::size_t d = 0; d < devices; ++d) {
            pipelines.emplace_back(spec, *config.cloud_function, config.link, "edge-" + std::to_string(d), d, devices,
                                   SeededRng(component_seed(root, "cloud/" + std::to_string(d))));
            events.push(pipelines.back().next_start(), 1, ItemStart{d});
        }
        std::uint64_t ordinal = 0;
        while (!events.empty()) {
            auto e = events.pop();
            clock = advance(clock, e.time);
            if (auto* start = std::get_if<ItemStart>(&e.payload)) {
                auto& p = pipelines[start->device];
                CloudItem item = p.run_next(clock, ledger);
                const auto id = item.upload.id;
                table[id] = TrackedMessage{item.upload.source, item.stamps, item.input_bytes};
                StoredMessage result{id, item.upload.source, item.stamps.t1, *item.stamps.t2,
                                     to_string(spec.kind) + "-result-" + std::to_string(id), item.result_bytes};
                events.push(*item.stamps.t3, 0,
                            CloudBlob{blob_name(route + "-results", ordinal++, id), std::move(result)});
                active_until = std::max(active_until, item.upload_start + item.upload_ms);
                if (!p.done()) events.push(p.next_start(), 1, ItemStart{start->device});
            } else if (auto* blob = std::get_if<CloudBlob>(&e.payload)) {
                const auto& rec = store.create_blob(blob->name, std::span(&blob->msg, 1), e.time);
                table[blob->msg.id].stamps.t3 = rec.created_at;
            }
        }
        return finish(config, store, std::move(table), ledger_report(ledger), active_until, std::nullopt);
    }

    Link link(config.link, SeededRng(component_seed(root, "network")));
    HubBackend backend(config.hub, route, 0, SeededRng(component_seed(root, "hub")), store, table);
    std::vector<WorkloadDriver> drivers;
    for (std::size_t d = 0; d < devices; ++d) {
        drivers.emplace_back(spec, "edge-" + std::to_string(d), d, devices,
                             SeededRng(component_seed(root, "workload/" + std::to_string(d))));
        events.push(drivers.back().next_start(), 1, ItemStart{d});
    }

    bool drained = false;
    while (true) {
        const auto td = events.next_time();
        const auto tb = backend.next_time();
        if (!td && !tb) {
            if (drained) break;
            backend.drain();
            drained = true;
            continue;
        }
        if (td && (!tb || *td <= *tb)) {
            auto e = events.pop();
            clock = advance(clock, e.time);
            if (auto* start = std::get_if<ItemStart>(&e.payload)) {
                auto em = drivers[start->device].run_next(clock);
                frame(em.message, link.model());
                table[em.message.id] = TrackedMessage{em.message.source,
                                                      TimestampRecord{em.message.t1, {}, {}, em.record.c_edge_ms},
                                                      em.message.payload_bytes};
                events.push(em.send_time, 0, Send{start->device, std::move(em.message)});
            } else if (auto* send = std::get_if<Send>(&e.payload)) {
                active_until = e.time;
                if (auto arrival = link.deliver(send->msg, e.time)) backend.arrive(std::move(send->msg), *arrival);
                auto& driver = drivers[send->device];
                if (!driver.done()) events.push(driver.next_start(), 1, ItemStart{send->device});
            }
        } else {
            clock = advance(clock, backend.step());
        }
    }

    HubSummary hub{to_string(config.hub.mode), 0, static_cast<std::int64_t>(backend.hub().records().size())};
    return finish(config, store, std::move(table), ledger_report(link.ledger()), active_until, hub);
}

RunReport build_report(const ScenarioConfig& config, const MessageTable& messages, const LedgerReport& bytes,
                       std::optional<ResourceSummary> resources, std::optional<HubSummary> hub) {
    std::vector<MetricRow> rows;
    rows.reserve(messages.size());
    std::int64_t incomplete = 0;
    for (const auto& [id, m] : messages) {
        if (!m.stamps.complete()) {
            ++incomplete;
            continue;
        }
        rows.push_back(finalize_row(id, m.stamps, m.payload_bytes));
    }
    if (rows.empty()) throw EmptyRun("scenario '" + config.name + "': no message reached storage");

    RunReport report = aggregate(rows, bytes);
    report.seed = config.seed.value_or(0);
    report.pipeline = to_string(config.pipeline);
    report.platform_profile = config.platform_profile;
    report.provider = config.provider;
    report.workload = to_string(config.workload.kind);
    report.mode = to_string(config.mode);
    report.config = to_json(config);
    report.config_fingerprint = fingerprint(report.config);
    report.resources = std::move(resources);
    report.hub = std::move(hub);
    report.emitted = static_cast<std::int64_t>(messages.size());
    report.incomplete = incomplete;
    return report;
}

void write_artifacts(const RunReport& report, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_file(out_dir / "report.json", export_report(report, ExportFormat::json));
    write_file(out_dir / "metrics.csv", export_report(report, ExportFormat::csv));
    write_charts(std::span(&report, 1), out_dir / "charts");
}

void write_charts(std::span<const RunReport> reports, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    for (const auto& [name, svg] : emit_charts(reports)) write_file(out_dir / name, svg);
    write_file(out_dir / "overview.svg", render_overview_svg(reports));
}

RunReport load_report(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open report '" + path.string() + "'");
    try {
        return report_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace edgebench
