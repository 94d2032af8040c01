#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frame_builder.hpp"

namespace netprofile::testing {

inline constexpr std::uint32_t kConnectAck = 0x0000A0B0;
inline constexpr std::uint16_t kMediaPort = 50123;
inline constexpr std::uint64_t kMediaLength = 1048576;

/// CONNECT through a proxy, its `200 Connection established` answer carrying
/// `response_seq`, then a few TLS records in both directions.
std::vector<RawFrame> connect_exchange(std::int64_t t, std::uint32_t ack, std::uint32_t response_seq,
                                       std::uint16_t client_port = 40000, const std::string& target = "example.com:443");

/// Canonical captures. Counts are for a fresh engine that is not at home,
/// with a 10 s session window.
std::vector<RawFrame> safe_site_capture();              // 1 SafeSite
std::vector<RawFrame> safe_site_shuffled_capture();     // 0: no inbound seq equals a stored ack
std::vector<RawFrame> safe_site_repeat_capture();       // 1: second CONNECT 4 s later, same session
std::vector<RawFrame> safe_site_new_session_capture();  // 2: second CONNECT 60 s later
std::vector<RawFrame> media_capture();                  // 1 MediaStream on kMediaPort, then 50 segments
std::vector<RawFrame> media_no_content_capture();       // 0: 204 No Content

struct NamedCapture {
    std::string file_name;
    std::vector<RawFrame> frames;
};

/// Every canonical capture with its file name under tests/fixtures/captures.
std::vector<NamedCapture> canonical_captures();

}  // namespace netprofile::testing
