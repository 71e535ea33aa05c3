#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "edgebench/core.hpp"

namespace edgebench {

/// Min-queue of timed events. Ties on time break by `priority` (lower
/// first), then by insertion order, so the pop sequence is fully
/// deterministic.
template <class Payload>
class EventQueue {
public:
    struct Event {
        Millis time = 0;
        int priority = 0;
        std::uint64_t seq = 0;
        Payload payload;
    };

    void push(Millis time, int priority, Payload payload) {
        heap_.push(Event{time, priority, next_seq_++, std::move(payload)});
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    std::optional<Millis> next_time() const {
        return heap_.empty() ? std::nullopt : std::optional<Millis>(heap_.top().time);
    }

    Event pop() {
        Event e = std::move(const_cast<Event&>(heap_.top()));
        heap_.pop();
        return e;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            if (a.priority != b.priority) return a.priority > b.priority;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace edgebench
