#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "edgebench/error.hpp"
#include "edgebench/network.hpp"
#include "edgebench/resources.hpp"
#include "edgebench/scenario.hpp"

namespace edgebench {

namespace {

using SteadyClock = std::chrono::steady_clock;

// Busy-waits so the edge worker actually occupies a core for the item's
// compute time; accurate to well under a millisecond on an idle host.
void spin_until(SteadyClock::time_point deadline) {
    while (SteadyClock::now() < deadline) {
    }
}

}  // namespace

ScenarioRun run_live(const ScenarioConfig& config, const RunOptions& options) {
    if (config.pipeline != PipelineKind::edge)
        throw ValidationError("live mode runs the edge pipeline only; cloud-only scenarios are virtual");

    const std::uint64_t root = config.seed.value_or(0);
    const auto& spec = config.workload;
    const auto devices = static_cast<std::size_t>(spec.devices);
    const auto t0 = SteadyClock::now();
    auto now_ms = [t0] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(SteadyClock::now() - t0).count();
    };
    auto wall = [t0](Millis ms) { return t0 + std::chrono::milliseconds(ms); };

    BlobStore store(config.blob_envelope_bytes, options.persist_blobs);
    MessageTable table;
    Link link(config.link, SeededRng(component_seed(root, "network")));
    HubBackend backend(config.hub, to_string(spec.kind), 0, SeededRng(component_seed(root, "hub")), store, table);

    std::mutex mu;
    std::condition_variable cv;
    std::size_t running = devices;
    Millis active_until = 0;

    ResourceSampler sampler;
    sampler.start();

    auto device = [&](std::size_t d) {
        SeededRng rng(component_seed(root, "workload/" + std::to_string(d)));
        const std::string source = "edge-" + std::to_string(d);
        Millis next_start = round_half_even(spec.warmup_delay_s * 1000.0);
        for (std::int64_t idx = 0; idx < spec.items; ++idx) {
            std::this_thread::sleep_until(wall(next_start));
            const Millis start = now_ms();
            const Clock clock{ClockMode::wall, start, config.skew_edge_ms};
            auto [rec, msg] = run_item(spec, idx, clock, rng);

            Millis c_edge;
            if (options.item_function) {
                const auto before = SteadyClock::now();
                ItemOutput out = options.item_function(idx);
                msg.body = std::move(out.body);
                msg.payload_bytes = static_cast<std::int64_t>(msg.body.size());
                c_edge = out.compute_ms.value_or(
                    std::chrono::duration_cast<std::chrono::milliseconds>(SteadyClock::now() - before).count());
            } else {
                spin_until(wall(start + rec.c_edge_ms));
                c_edge = now_ms() - start;
            }
            const Millis send = now_ms();
            msg.id = d + static_cast<std::uint64_t>(idx) * devices;
            msg.source = source;
            msg.t1 = clock.edge_stamp(send);
            frame(msg, link.model());

            {
                std::lock_guard lock(mu);
                table[msg.id] = TrackedMessage{source, TimestampRecord{msg.t1, {}, {}, c_edge}, msg.payload_bytes};
                if (auto arrival = link.deliver(msg, send)) backend.arrive(std::move(msg), *arrival);
                active_until = std::max(active_until, send);
            }
            cv.notify_all();

            if (spec.kind == WorkloadKind::scalar) {
                next_start = std::max(send, start + round_half_even(spec.scalar_interval_s * 1000.0));
            } else {
                next_start = send + sample_ms(spec.inter_item_gap_ms, rng);
            }
        }
        {
            std::lock_guard lock(mu);
            --running;
        }
        cv.notify_all();
    };

    std::vector<std::jthread> workers;
    for (std::size_t d = 0; d < devices; ++d) workers.emplace_back(device, d);

    {
        std::unique_lock lock(mu);
        bool drained = false;
        while (true) {
            const auto next = backend.next_time();
            if (!next) {
                if (running == 0) {
                    if (drained) break;
                    backend.drain();
                    drained = true;
                    continue;
                }
                cv.wait(lock);
                continue;
            }
            if (*next <= now_ms()) {
                backend.step();
                continue;
            }
            cv.wait_until(lock, wall(*next));
        }
    }
    workers.clear();
    const ResourceSummary measured = sampler.stop();

    HubSummary hub{to_string(config.hub.mode), static_cast<std::int64_t>(store.size()),
                   static_cast<std::int64_t>(backend.hub().records().size())};
    ScenarioRun run;
    run.report = build_report(config, table, ledger_report(link.ledger()), measured, hub);
    run.blobs = store.list_blobs();
    for (const auto& b : run.blobs) {
        auto& ids = run.blob_contents[b.name];
        for (const auto& m : store.contents(b.name)) ids.push_back(m.id);
    }
    run.messages = std::move(table);
    return run;
}

}  // namespace edgebench
