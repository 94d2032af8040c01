#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "netprofile/net_types.hpp"

namespace netprofile {

inline constexpr std::size_t kEthernetHeaderLen = 14;
inline constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
inline constexpr std::uint8_t kIpProtoTcp = 6;

enum class DecodeErrorKind { TruncatedFrame, NotIPv4, BadHeaderLength };

class FrameDecodeError : public std::runtime_error {
public:
    FrameDecodeError(DecodeErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] DecodeErrorKind kind() const { return kind_; }

private:
    DecodeErrorKind kind_;
};

/// Ethernet/IPv4/TCP fields of one frame. `payload` views the caller's frame
/// buffer and is only valid while that buffer lives. For non-TCP packets the
/// transport fields are zero and the payload is empty.
struct DecodedPacket {
    MacAddress src_mac;
    MacAddress dst_mac;
    std::uint8_t ip_proto = 0;
    Ipv4Address src_ip;
    Ipv4Address dst_ip;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint32_t seq = 0;
    std::uint32_t ack = 0;
    std::size_t payload_offset = 0;
    std::span<const std::uint8_t> payload;
    Timestamp timestamp;

    [[nodiscard]] bool is_tcp() const { return ip_proto == kIpProtoTcp; }
    [[nodiscard]] std::string_view payload_text() const {
        return {reinterpret_cast<const char*>(payload.data()), payload.size()};
    }
};

/// Payload starts after the Ethernet, IPv4 (IHL*4) and TCP (data offset*4)
/// headers. Its end is the IPv4 total length when that lies inside the
/// captured frame, which drops Ethernet padding; otherwise the frame end.
/// Throws FrameDecodeError.
DecodedPacket decode_frame(std::span<const std::uint8_t> frame, Timestamp ts);

enum class Direction { Outbound, Inbound, Other };

std::string_view to_string(Direction d);

/// Outbound when the source MAC is local, else Inbound when the destination is.
Direction classify_direction(const DecodedPacket& pkt, const MacAddress& local_mac);

}  // namespace netprofile
