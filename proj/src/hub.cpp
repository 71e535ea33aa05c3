#include "edgebench/hub.hpp"

#include "edgebench/error.hpp"

namespace edgebench {

std::string to_string(HubMode mode) {
    return mode == HubMode::immediate ? "immediate" : "batched";
}

HubMode hub_mode_from_string(const std::string& s) {
    if (s == "immediate") return HubMode::immediate;
    if (s == "batched") return HubMode::batched;
    throw ValidationError("unknown hub mode '" + s + "'");
}

void validate(const HubPolicy& policy) {
    validate(policy.write_latency_ms);
    if (policy.holdback_s < 0) throw ValidationError("hub.holdback_s must be >= 0");
    if (policy.mode != HubMode::batched) return;

    if (!policy.window_s && !policy.chunk_bytes)
        throw ValidationError("batched hub requires window_s or chunk_bytes");
    if (policy.window_s && !(*policy.window_s > 0))
        throw ValidationError("hub.window_s must be > 0");
    if (policy.chunk_bytes && *policy.chunk_bytes <= 0)
        throw ValidationError("hub.chunk_bytes must be > 0");
    if (policy.platform_faithful) {
        if (policy.window_s && *policy.window_s < kMinWindowSeconds)
            throw ValidationError("hub.window_s = " + std::to_string(*policy.window_s) +
                                  " is below the platform minimum of 60 s");
        if (policy.chunk_bytes && *policy.chunk_bytes < kMinChunkBytes)
            throw ValidationError("hub.chunk_bytes = " + std::to_string(*policy.chunk_bytes) +
                                  " is below the platform minimum of 10 MB (10485760 bytes)");
    }
}

BlobWrite route_immediate(const StoredMessage& msg, const HubPolicy& policy, SeededRng& rng,
                          std::string name) {
    BlobWrite w;
    w.name = std::move(name);
    w.created_at = msg.t2 + sample_ms(policy.write_latency_ms, rng);
    w.messages.push_back(msg);
    return w;
}

Millis window_close_time(Millis route_created, Millis t2, Millis window_ms) {
    const Millis offset = t2 - route_created;
    Millis k = offset <= 0 ? 1 : (offset + window_ms - 1) / window_ms;
    if (k < 1) k = 1;
    return route_created + k * window_ms;
}

BlobWrite route_batched(std::vector<StoredMessage> msgs, const HubPolicy& policy, Millis flush_time,
                        std::string name) {
    BlobWrite w;
    w.name = std::move(name);
    w.flush_time = flush_time;
    w.created_at = flush_time + round_half_even(policy.holdback_s * 1000.0);
    w.messages = std::move(msgs);
    return w;
}

Hub::Hub(HubPolicy policy, std::string route, Millis created_at, SeededRng rng)
    : policy_(std::move(policy)), route_(std::move(route)), created_at_(created_at), rng_(rng) {}

std::string Hub::next_name(std::uint64_t first_id) {
    return blob_name(route_, flush_ordinal_++, first_id);
}

Hub::IngestResult Hub::ingest(const Message& msg, Millis arrival) {
    IngestResult out;
    HubRecord rec{msg.id, msg.source, arrival, std::nullopt, std::nullopt};
    StoredMessage stored{msg.id, msg.source, msg.t1, arrival, msg.body, msg.payload_bytes};

    if (policy_.mode == HubMode::immediate) {
        auto w = route_immediate(stored, policy_, rng_, next_name(msg.id));
        rec.t3 = w.created_at;
        records_.push_back(rec);
        out.record = rec;
        out.writes.push_back(std::move(w));
        return out;
    }

    std::optional<Millis> deadline;
    if (policy_.window_s) {
        deadline = window_close_time(created_at_, arrival, round_half_even(*policy_.window_s * 1000.0));
        // A batch whose window already closed must not absorb later arrivals.
        if (open_ && open_->deadline && *open_->deadline < *deadline) {
            out.writes.push_back(close_batch(*open_->deadline));
        }
    }
    if (!open_) {
        open_.emplace();
        open_->deadline = deadline;
        out.flush_at = deadline;
    }
    records_.push_back(rec);
    open_->messages.push_back(std::move(stored));
    open_->record_index.push_back(records_.size() - 1);
    open_->bytes += msg.payload_bytes;

    if (policy_.chunk_bytes && open_->bytes >= *policy_.chunk_bytes) {
        out.writes.push_back(close_batch(arrival));
    }
    // Read back after a possible chunk flush so the record carries its t3.
    out.record = records_.back();
    return out;
}

std::vector<BlobWrite> Hub::on_timer(Millis now) {
    std::vector<BlobWrite> out;
    if (open_ && open_->deadline && *open_->deadline <= now) out.push_back(close_batch(*open_->deadline));
    return out;
}

std::vector<BlobWrite> Hub::drain() {
    std::vector<BlobWrite> out;
    if (open_) {
        const Millis at = open_->deadline ? *open_->deadline : records_[open_->record_index.back()].t2;
        out.push_back(close_batch(at));
    }
    return out;
}

BlobWrite Hub::close_batch(Millis flush_time) {
    OpenBatch batch = std::move(*open_);
    open_.reset();
    const std::uint64_t first_id = batch.messages.front().id;
    auto w = route_batched(std::move(batch.messages), policy_, flush_time, next_name(first_id));
    for (std::size_t idx : batch.record_index) {
        records_[idx].flush_time = flush_time;
        records_[idx].t3 = w.created_at;
    }
    return w;
}

}  // namespace edgebench
