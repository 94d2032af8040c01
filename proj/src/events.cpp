#include "netprofile/events.hpp"

namespace netprofile {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::UnknownNetwork: return "UnknownNetwork";
        case EventKind::ProfileApplied: return "ProfileApplied";
        case EventKind::SafeSite: return "SafeSite";
        case EventKind::MediaStream: return "MediaStream";
    }
    return "Unknown";
}

NotificationEvent EventLog::append(EventPayload payload, Timestamp ts) {
    NotificationEvent ev;
    ev.kind = static_cast<EventKind>(payload.index());
    ev.payload = std::move(payload);
    ev.ts = ts;
    {
        std::lock_guard lock(mu_);
        ev.seq = events_.size() + 1;
        events_.push_back(ev);
    }
    cv_.notify_all();
    return ev;
}

std::vector<NotificationEvent> EventLog::since(std::uint64_t since) const {
    std::lock_guard lock(mu_);
    if (since >= events_.size()) return {};
    return {events_.begin() + static_cast<std::ptrdiff_t>(since), events_.end()};
}

std::vector<NotificationEvent> EventLog::wait_since(std::uint64_t since, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, timeout, [&] { return events_.size() > since; });
    if (since >= events_.size()) return {};
    return {events_.begin() + static_cast<std::ptrdiff_t>(since), events_.end()};
}

std::uint64_t EventLog::last_seq() const {
    std::lock_guard lock(mu_);
    return events_.size();
}

}  // namespace netprofile
