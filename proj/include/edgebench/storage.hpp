#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgebench/core.hpp"

namespace edgebench {

/// A message as it sits inside a blob.
struct StoredMessage {
    std::uint64_t id = 0;
    std::string source;
    std::optional<Millis> t1;
    Millis t2 = 0;
    std::string body;
    std::int64_t payload_bytes = 0;

    friend bool operator==(const StoredMessage&, const StoredMessage&) = default;
};

struct BlobRecord {
    std::string name;
    Millis created_at = 0;      // T3 of every contained message
    std::vector<std::uint64_t> message_ids;
    std::int64_t size_bytes = 0;

    friend bool operator==(const BlobRecord&, const BlobRecord&) = default;
};

/// `<route>/<flush-ordinal>-<first-message-id>.json`, zero padded so that
/// lexical order follows flush order.
std::string blob_name(std::string_view route, std::uint64_t flush_ordinal, std::uint64_t first_id);

/// In-memory blob sink, optionally mirrored to disk as one JSON file per
/// blob: {name, created_at, messages: [{id, t1, t2, body}]}.
class BlobStore {
public:
    explicit BlobStore(std::int64_t envelope_bytes = 0,
                       std::optional<std::filesystem::path> persist_dir = std::nullopt);

    /// Throws DuplicateBlobName when `name` was already used.
    const BlobRecord& create_blob(const std::string& name, std::span<const StoredMessage> contents,
                                  Millis created_at);

    /// Blobs whose name starts with `prefix`, ordered by created_at then name.
    std::vector<BlobRecord> list_blobs(std::string_view prefix = {}) const;

    const std::vector<StoredMessage>& contents(const std::string& name) const;
    std::size_t size() const { return blobs_.size(); }
    std::int64_t envelope_bytes() const { return envelope_bytes_; }

private:
    struct Entry {
        BlobRecord record;
        std::vector<StoredMessage> messages;
    };

    void persist(const Entry& e) const;

    std::int64_t envelope_bytes_;
    std::optional<std::filesystem::path> persist_dir_;
    std::map<std::string, Entry> blobs_;
};

}  // namespace edgebench
