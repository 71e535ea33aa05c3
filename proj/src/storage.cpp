#include "edgebench/storage.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "edgebench/error.hpp"

namespace edgebench {

std::string blob_name(std::string_view route, std::uint64_t flush_ordinal, std::uint64_t first_id) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "/%06llu-%08llu.json", static_cast<unsigned long long>(flush_ordinal),
                  static_cast<unsigned long long>(first_id));
    return std::string(route) + buf;
}

BlobStore::BlobStore(std::int64_t envelope_bytes, std::optional<std::filesystem::path> persist_dir)
    : envelope_bytes_(envelope_bytes), persist_dir_(std::move(persist_dir)) {}

const BlobRecord& BlobStore::create_blob(const std::string& name, std::span<const StoredMessage> contents,
                                         Millis created_at) {
    if (blobs_.contains(name)) throw DuplicateBlobName("blob '" + name + "' already exists");

    Entry e;
    e.record.name = name;
    e.record.created_at = created_at;
    e.record.size_bytes = envelope_bytes_;
    e.messages.assign(contents.begin(), contents.end());
    for (const auto& m : contents) {
        e.record.message_ids.push_back(m.id);
        e.record.size_bytes += m.payload_bytes;
    }
    if (persist_dir_) persist(e);
    return blobs_.emplace(name, std::move(e)).first->second.record;
}

std::vector<BlobRecord> BlobStore::list_blobs(std::string_view prefix) const {
    std::vector<BlobRecord> out;
    for (const auto& [name, e] : blobs_) {
        if (name.starts_with(prefix)) out.push_back(e.record);
    }
    // map iteration is already name-ordered; a stable sort keeps that as the tie-break.
    std::stable_sort(out.begin(), out.end(),
                     [](const BlobRecord& a, const BlobRecord& b) { return a.created_at < b.created_at; });
    return out;
}

const std::vector<StoredMessage>& BlobStore::contents(const std::string& name) const {
    auto it = blobs_.find(name);
    if (it == blobs_.end()) throw Error("UnknownBlob", "no blob named '" + name + "'");
    return it->second.messages;
}

void BlobStore::persist(const Entry& e) const {
    nlohmann::json j;
    j["name"] = e.record.name;
    j["created_at"] = e.record.created_at;
    auto msgs = nlohmann::json::array();
    for (const auto& m : e.messages) {
        msgs.push_back({{"id", m.id},
                        {"t1", m.t1 ? nlohmann::json(*m.t1) : nlohmann::json(nullptr)},
                        {"t2", m.t2},
                        {"body", m.body}});
    }
    j["messages"] = std::move(msgs);

    const auto path = *persist_dir_ / e.record.name;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IoError", "cannot write blob file " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace edgebench
