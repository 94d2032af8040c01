#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "netprofile/net_types.hpp"
#include "netprofile/packet.hpp"
#include "netprofile/session.hpp"

namespace netprofile {

inline constexpr double kPendingConnectTtlSecs = 30.0;
inline constexpr std::size_t kPendingConnectCap = 1024;

/// Subtypes that mark an `application/*` or `x-music/*` body as audio/video.
std::set<std::string> default_media_subtypes();

struct PendingConnect {
    std::string url;
    std::uint32_t ack_number = 0;
    Timestamp created_at;
};

struct SafeSiteEvent {
    std::string url;
    Timestamp ts;
};

struct MediaStreamEvent {
    std::string content_type;
    std::uint16_t dst_port = 0;
    std::uint64_t content_length = 0;
    Timestamp ts;
};

/// Pairs outbound HTTPS requests with the inbound `200 Connection established`
/// whose sequence number equals the request's acknowledgement number.
class HttpsTunnelDetector {
public:
    explicit HttpsTunnelDetector(double ttl_secs = kPendingConnectTtlSecs, std::size_t cap = kPendingConnectCap);

    /// CONNECT requests record their target; other requests to port 443 record
    /// their Host header. Keyed by the packet's ack number, last writer wins.
    void on_outbound(const DecodedPacket& pkt);

    /// A matching pending entry is consumed whatever the response says.
    std::optional<SafeSiteEvent> on_inbound(const DecodedPacket& pkt, SessionResolver& sessions);

    [[nodiscard]] const std::map<std::uint32_t, PendingConnect>& pending() const { return pending_; }
    [[nodiscard]] const std::set<SessionId>& seen_sessions() const { return seen_sessions_; }

private:
    void expire(Timestamp now);
    void erase(std::map<std::uint32_t, PendingConnect>::iterator it);

    std::int64_t ttl_micros_;
    std::size_t cap_;
    std::map<std::uint32_t, PendingConnect> pending_;
    std::set<std::pair<Timestamp, std::uint32_t>> by_age_;
    std::set<SessionId> seen_sessions_;
};

/// One notification per destination port for `200 OK` audio/video responses
/// that carry a Content-Length.
class MediaStreamDetector {
public:
    explicit MediaStreamDetector(std::set<std::string> media_subtypes = default_media_subtypes());

    /// Always nullopt while `is_home`.
    std::optional<MediaStreamEvent> on_inbound(const DecodedPacket& pkt, bool is_home);

    /// Content-Type (parameters ignored) names audio or video content.
    [[nodiscard]] bool is_media_type(std::string_view content_type) const;

    [[nodiscard]] const std::set<std::uint16_t>& seen_ports() const { return seen_ports_; }

private:
    std::set<std::string> subtypes_;
    std::set<std::uint16_t> seen_ports_;
};

/// Both detectors plus direction classification for one capture stream.
class PacketEngine {
public:
    PacketEngine(MacAddress local_mac, SessionResolver& sessions, std::set<std::string> media_subtypes = default_media_subtypes());

    struct Result {
        std::optional<SafeSiteEvent> safe_site;
        std::optional<MediaStreamEvent> media;
    };

    /// Skips non-TCP packets and empty payloads.
    Result process(const DecodedPacket& pkt, bool is_home);

    void set_local_mac(const MacAddress& mac) { local_mac_ = mac; }
    [[nodiscard]] const MacAddress& local_mac() const { return local_mac_; }
    HttpsTunnelDetector& https() { return https_; }
    MediaStreamDetector& media() { return media_; }

private:
    MacAddress local_mac_;
    SessionResolver& sessions_;
    HttpsTunnelDetector https_;
    MediaStreamDetector media_;
};

}  // namespace netprofile
