#include "edgebench/workloads.hpp"

#include <cmath>
#include <cstdio>

#include "edgebench/error.hpp"

namespace edgebench {

std::string to_string(WorkloadKind kind) {
    switch (kind) {
        case WorkloadKind::scalar: return "scalar";
        case WorkloadKind::image: return "image";
        case WorkloadKind::audio: return "audio";
        case WorkloadKind::custom: return "custom";
    }
    return "custom";
}

WorkloadKind workload_kind_from_string(const std::string& s) {
    if (s == "scalar") return WorkloadKind::scalar;
    if (s == "image") return WorkloadKind::image;
    if (s == "audio") return WorkloadKind::audio;
    if (s == "custom") return WorkloadKind::custom;
    throw ValidationError("unknown workload kind '" + s + "'");
}

namespace {

void check_rate(double freq_hz, double interval_s) {
    if (!(freq_hz > 0)) throw InvalidRate("scalar frequency must be > 0 Hz, got " + std::to_string(freq_hz));
    if (!(interval_s > 0)) throw InvalidRate("scalar interval must be > 0 s, got " + std::to_string(interval_s));
}

std::int64_t scalar_count(double freq_hz, double interval_s) {
    return static_cast<std::int64_t>(std::floor(freq_hz * interval_s));
}

std::string result_body(WorkloadKind kind, std::int64_t idx, std::int64_t bytes) {
    std::string body = to_string(kind) + "-result-" + std::to_string(idx) + ":";
    body.resize(static_cast<std::size_t>(bytes), '.');
    return body;
}

}  // namespace

void validate(const WorkloadSpec& spec) {
    if (spec.items < 1) throw ValidationError("workload.items must be >= 1");
    if (spec.devices < 1) throw ValidationError("workload.devices must be >= 1");
    if (spec.warmup_delay_s < 0) throw ValidationError("workload.warmup_delay_s must be >= 0");
    validate(spec.input_bytes_per_item);
    validate(spec.compute_ms);
    validate(spec.result_payload_bytes);
    validate(spec.inter_item_gap_ms);
    if (spec.kind == WorkloadKind::scalar) check_rate(spec.scalar_freq_hz, spec.scalar_interval_s);
}

std::int64_t scalar_body_bytes(std::int64_t count) {
    // "[" v ("," v)* "]"
    return count == 0 ? 2 : 2 + count * kScalarValueWidth + (count - 1);
}

Message generate_scalar_batch(double freq_hz, double interval_s, SeededRng& rng) {
    check_rate(freq_hz, interval_s);
    const std::int64_t n = scalar_count(freq_hz, interval_s);
    Message msg;
    msg.body.reserve(static_cast<std::size_t>(scalar_body_bytes(n)));
    msg.body.push_back('[');
    char buf[32];
    for (std::int64_t i = 0; i < n; ++i) {
        if (i) msg.body.push_back(',');
        std::snprintf(buf, sizeof buf, "%.6f", rng.uniform01());
        msg.body += buf;
    }
    msg.body.push_back(']');
    msg.payload_bytes = static_cast<std::int64_t>(msg.body.size());
    return msg;
}

std::pair<ComputeRecord, Message> run_item(const WorkloadSpec& spec, std::int64_t idx,
                                           const Clock& clock, SeededRng& rng) {
    if (idx < 0 || idx >= spec.items) {
        throw ExhaustedWorkload("item " + std::to_string(idx) + " requested from a workload of " +
                                std::to_string(spec.items) + " items");
    }
    ComputeRecord rec;
    rec.item_index = idx;
    rec.c_edge_ms = sample_ms(spec.compute_ms, rng);

    Message msg;
    if (spec.kind == WorkloadKind::scalar) {
        msg = generate_scalar_batch(spec.scalar_freq_hz, spec.scalar_interval_s, rng);
        rec.input_bytes = msg.payload_bytes;
    } else {
        rec.input_bytes = sample_bytes(spec.input_bytes_per_item, rng);
        msg.payload_bytes = sample_bytes(spec.result_payload_bytes, rng);
        msg.body = result_body(spec.kind, idx, msg.payload_bytes);
    }
    rec.payload_bytes = msg.payload_bytes;
    msg.id = static_cast<std::uint64_t>(idx);
    msg.t1 = clock.edge_stamp(clock.now + rec.c_edge_ms);
    return {rec, std::move(msg)};
}

WorkloadTotals workload_totals(const WorkloadSpec& spec) {
    WorkloadTotals t;
    if (spec.items <= 0 || spec.devices <= 0) return t;
    const double n = static_cast<double>(spec.items) * static_cast<double>(spec.devices);
    if (spec.kind == WorkloadKind::scalar) {
        const double per = static_cast<double>(
            scalar_body_bytes(scalar_count(spec.scalar_freq_hz, spec.scalar_interval_s)));
        t.input_bytes = per * n;
        t.payload_bytes = per * n;
    } else {
        t.input_bytes = expectation(spec.input_bytes_per_item) * n;
        t.payload_bytes = expectation(spec.result_payload_bytes) * n;
    }
    return t;
}

WorkloadDriver::WorkloadDriver(WorkloadSpec spec, std::string source, std::uint64_t id_offset,
                               std::uint64_t id_stride, SeededRng rng)
    : spec_(std::move(spec)),
      source_(std::move(source)),
      id_offset_(id_offset),
      id_stride_(id_stride),
      rng_(rng),
      next_start_(round_half_even(spec_.warmup_delay_s * 1000.0)) {}

WorkloadDriver::Emission WorkloadDriver::run_next(const Clock& clock) {
    const Millis start = clock.now;
    auto [rec, msg] = run_item(spec_, next_index_, clock, rng_);
    msg.id = id_offset_ + static_cast<std::uint64_t>(next_index_) * id_stride_;
    msg.source = source_;

    Emission e{rec, std::move(msg), start + rec.c_edge_ms};
    if (spec_.kind == WorkloadKind::scalar) {
        const Millis cadence = round_half_even(spec_.scalar_interval_s * 1000.0);
        next_start_ = std::max(e.send_time, start + cadence);
    } else {
        next_start_ = e.send_time + sample_ms(spec_.inter_item_gap_ms, rng_);
    }
    ++next_index_;
    return e;
}

}  // namespace edgebench
