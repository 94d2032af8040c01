#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netprofile/detectors.hpp"
#include "netprofile/modifiers.hpp"
#include "netprofile/net_types.hpp"

namespace netprofile {

enum class EventKind { UnknownNetwork, ProfileApplied, SafeSite, MediaStream };

std::string_view to_string(EventKind kind);

struct UnknownNetworkPayload {
    std::string network_id;
};

struct ProfileAppliedPayload {
    std::string network_id;
    std::vector<ChangeReport> reports;
    std::optional<std::string> error;  // profile could not be loaded
    std::vector<std::string> warnings;
};

struct SafeSitePayload {
    std::string url;
};

struct MediaStreamPayload {
    std::string content_type;
    std::uint16_t dst_port = 0;
    std::uint64_t content_length = 0;
};

using EventPayload = std::variant<UnknownNetworkPayload, ProfileAppliedPayload, SafeSitePayload, MediaStreamPayload>;

struct NotificationEvent {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::UnknownNetwork;
    EventPayload payload;
    Timestamp ts;
};

/// Append-only, seq-numbered from 1. Safe for concurrent readers and writers.
class EventLog {
public:
    NotificationEvent append(EventPayload payload, Timestamp ts);

    /// Events with seq > `since`, in order.
    [[nodiscard]] std::vector<NotificationEvent> since(std::uint64_t since) const;

    /// Like since(), but blocks up to `timeout` while nothing newer exists.
    [[nodiscard]] std::vector<NotificationEvent> wait_since(std::uint64_t since, std::chrono::milliseconds timeout) const;

    [[nodiscard]] std::uint64_t last_seq() const;

private:
    mutable std::mutex mu_;
    mutable std::condition_variable cv_;
    std::vector<NotificationEvent> events_;
};

}  // namespace netprofile
