#include "netprofile/detectors.hpp"

#include <charconv>
#include <cmath>

#include "netprofile/http_head.hpp"
#include "netprofile/text.hpp"

namespace netprofile {

std::set<std::string> default_media_subtypes() {
    return {"mp4", "mpeg", "mp3", "ogg", "webm", "x-flv", "3gpp", "quicktime", "x-ms-wmv", "wav"};
}

HttpsTunnelDetector::HttpsTunnelDetector(double ttl_secs, std::size_t cap)
    : ttl_micros_(static_cast<std::int64_t>(std::llround(ttl_secs * 1e6))), cap_(cap) {}

void HttpsTunnelDetector::erase(std::map<std::uint32_t, PendingConnect>::iterator it) {
    by_age_.erase({it->second.created_at, it->first});
    pending_.erase(it);
}

void HttpsTunnelDetector::expire(Timestamp now) {
    const std::int64_t cutoff = now.total_micros() - ttl_micros_;
    while (!by_age_.empty() && by_age_.begin()->first.total_micros() < cutoff) {
        erase(pending_.find(by_age_.begin()->second));
    }
}

void HttpsTunnelDetector::on_outbound(const DecodedPacket& pkt) {
    if (!pkt.is_tcp() || pkt.payload.empty()) return;
    expire(pkt.timestamp);

    const auto head = parse_http_request_head(pkt.payload_text());
    std::string url;
    if (head && head->method == "CONNECT") {
        url = head->target;
    } else if (head && pkt.dst_port == 443) {
        if (const auto host = find_header(head->headers, "Host")) url = std::string(*host);
    }
    if (url.empty()) return;

    if (const auto it = pending_.find(pkt.ack); it != pending_.end()) erase(it);
    if (pending_.size() >= cap_) erase(pending_.find(by_age_.begin()->second));
    pending_.emplace(pkt.ack, PendingConnect{std::move(url), pkt.ack, pkt.timestamp});
    by_age_.emplace(pkt.timestamp, pkt.ack);
}

std::optional<SafeSiteEvent> HttpsTunnelDetector::on_inbound(const DecodedPacket& pkt, SessionResolver& sessions) {
    if (!pkt.is_tcp() || pkt.payload.empty()) return std::nullopt;
    expire(pkt.timestamp);

    const auto it = pending_.find(pkt.seq);
    if (it == pending_.end()) return std::nullopt;
    const std::string url = it->second.url;
    erase(it);

    const auto head = parse_http_response_head(pkt.payload_text());
    if (!head || head->status_code != 200 || head->reason != "Connection established") return std::nullopt;

    const SessionId sid = sessions.resolve(url, pkt.timestamp);
    if (!seen_sessions_.insert(sid).second) return std::nullopt;
    return SafeSiteEvent{url, pkt.timestamp};
}

MediaStreamDetector::MediaStreamDetector(std::set<std::string> media_subtypes) : subtypes_(std::move(media_subtypes)) {}

bool MediaStreamDetector::is_media_type(std::string_view content_type) const {
    const std::string value = text::to_lower(text::trim(content_type.substr(0, content_type.find(';'))));
    const auto slash = value.find('/');
    if (slash == std::string::npos) return false;
    const auto type = std::string_view(value).substr(0, slash);
    const auto subtype = text::trim(std::string_view(value).substr(slash + 1));
    if (type == "audio" || type == "video") return !subtype.empty();
    if (type == "application" || type == "x-music") return subtypes_.contains(std::string(subtype));
    return false;
}

std::optional<MediaStreamEvent> MediaStreamDetector::on_inbound(const DecodedPacket& pkt, bool is_home) {
    if (is_home || !pkt.is_tcp() || pkt.payload.empty()) return std::nullopt;

    const auto head = parse_http_response_head(pkt.payload_text());
    if (!head || head->status_code != 200 || head->reason != "OK") return std::nullopt;
    const auto content_type = find_header(head->headers, "Content-Type");
    if (!content_type || !is_media_type(*content_type)) return std::nullopt;
    const auto length_text = find_header(head->headers, "Content-Length");
    if (!length_text) return std::nullopt;
    std::uint64_t length = 0;
    const auto [ptr, ec] = std::from_chars(length_text->data(), length_text->data() + length_text->size(), length);
    if (ec != std::errc() || ptr != length_text->data() + length_text->size()) return std::nullopt;

    if (!seen_ports_.insert(pkt.dst_port).second) return std::nullopt;
    return MediaStreamEvent{std::string(text::trim(content_type->substr(0, content_type->find(';')))), pkt.dst_port, length,
                            pkt.timestamp};
}

PacketEngine::PacketEngine(MacAddress local_mac, SessionResolver& sessions, std::set<std::string> media_subtypes)
    : local_mac_(local_mac), sessions_(sessions), media_(std::move(media_subtypes)) {}

PacketEngine::Result PacketEngine::process(const DecodedPacket& pkt, bool is_home) {
    Result result;
    if (!pkt.is_tcp() || pkt.payload.empty()) return result;
    switch (classify_direction(pkt, local_mac_)) {
        case Direction::Outbound:
            https_.on_outbound(pkt);
            break;
        case Direction::Inbound:
            result.safe_site = https_.on_inbound(pkt, sessions_);
            result.media = media_.on_inbound(pkt, is_home);
            break;
        case Direction::Other:
            break;
    }
    return result;
}

}  // namespace netprofile
