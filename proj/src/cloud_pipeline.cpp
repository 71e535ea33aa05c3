#include "edgebench/cloud_pipeline.hpp"

#include "edgebench/error.hpp"

namespace edgebench {

void validate(const CloudFunctionProfile& profile) {
    validate(profile.trigger_overhead_ms);
    validate(profile.exec_ms);
    validate(profile.result_write_ms);
    validate(profile.inter_upload_gap_s);
    if (!(profile.memory_mb > 0)) throw ValidationError("cloud_function.memory_mb must be > 0");
}

CloudItem run_cloud_item(const WorkloadSpec& spec, std::int64_t idx, const CloudFunctionProfile& profile,
                         const LinkModel& link, const Clock& clock, SeededRng& rng, ByteLedger& ledger,
                         const std::string& source) {
    if (idx < 0 || idx >= spec.items) {
        throw ExhaustedWorkload("item " + std::to_string(idx) + " requested from a workload of " +
                                std::to_string(spec.items) + " items");
    }
    CloudItem item;
    item.upload_start = clock.now;

    if (spec.kind == WorkloadKind::scalar) {
        item.upload = generate_scalar_batch(spec.scalar_freq_hz, spec.scalar_interval_s, rng);
        item.input_bytes = item.upload.payload_bytes;
        item.result_bytes = item.input_bytes;
    } else {
        item.input_bytes = sample_bytes(spec.input_bytes_per_item, rng);
        item.result_bytes = sample_bytes(spec.result_payload_bytes, rng);
        item.upload.payload_bytes = item.input_bytes;
        item.upload.body = to_string(spec.kind) + "-input-" + std::to_string(idx);
    }
    item.upload.id = static_cast<std::uint64_t>(idx);
    item.upload.source = source;
    frame(item.upload, link);
    item.upload.t1 = clock.edge_stamp(clock.now);

    item.upload_ms = sample_ms(link.propagation_ms, rng) + serialization_ms(item.upload.wire_bytes(), link);
    item.trigger_ms = sample_ms(profile.trigger_overhead_ms, rng);
    item.exec_ms = sample_ms(profile.exec_ms, rng);
    item.write_ms = sample_ms(profile.result_write_ms, rng);

    ledger.record(source, item.input_bytes + item.result_bytes, item.upload.overhead_bytes);

    item.stamps.c_edge = 0;
    item.stamps.t1 = item.upload.t1;
    item.stamps.t2 = clock.now + item.upload_ms;
    item.stamps.t3 = *item.stamps.t2 + item.trigger_ms + item.exec_ms + item.write_ms;
    return item;
}

double cloud_bandwidth(const WorkloadSpec& spec, const LinkModel& link) {
    if (spec.items <= 0 || spec.devices <= 0) return 0;
    const auto totals = workload_totals(spec);
    const double uploads = static_cast<double>(spec.items) * static_cast<double>(spec.devices);
    const double results = spec.kind == WorkloadKind::scalar ? totals.input_bytes : totals.payload_bytes;
    return totals.input_bytes + results + uploads * static_cast<double>(link.per_message_overhead_bytes);
}

CloudPipeline::CloudPipeline(WorkloadSpec spec, CloudFunctionProfile profile, LinkModel link,
                             std::string source, std::uint64_t id_offset, std::uint64_t id_stride,
                             SeededRng rng)
    : spec_(std::move(spec)),
      profile_(std::move(profile)),
      link_(std::move(link)),
      source_(std::move(source)),
      id_offset_(id_offset),
      id_stride_(id_stride),
      rng_(rng),
      next_start_(round_half_even(spec_.warmup_delay_s * 1000.0)) {}

CloudItem CloudPipeline::run_next(const Clock& clock, ByteLedger& ledger) {
    CloudItem item = run_cloud_item(spec_, next_index_, profile_, link_, clock, rng_, ledger, source_);
    item.upload.id = id_offset_ + static_cast<std::uint64_t>(next_index_) * id_stride_;
    const Millis gap = round_half_even(sample(profile_.inter_upload_gap_s, rng_) * 1000.0);
    const Millis upload_done = item.upload_start + item.upload_ms;
    const Millis function_done = upload_done + item.trigger_ms + item.exec_ms + item.write_ms;
    next_start_ = std::max(upload_done + gap, function_done);
    ++next_index_;
    return item;
}

}  // namespace edgebench
