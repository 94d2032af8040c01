#include "netprofile/packet.hpp"

#include <algorithm>
#include <string>

namespace netprofile {

namespace {

std::uint16_t be16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t be32(std::span<const std::uint8_t> b, std::size_t at) {
    return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) |
           std::uint32_t{b[at + 3]};
}

MacAddress mac_at(std::span<const std::uint8_t> b, std::size_t at) {
    MacAddress::Bytes bytes{};
    std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(at), 6, bytes.begin());
    return MacAddress(bytes);
}

}  // namespace

DecodedPacket decode_frame(std::span<const std::uint8_t> frame, Timestamp ts) {
    if (frame.size() < kEthernetHeaderLen) {
        throw FrameDecodeError(DecodeErrorKind::TruncatedFrame, "frame shorter than an Ethernet header");
    }
    DecodedPacket pkt;
    pkt.timestamp = ts;
    pkt.dst_mac = mac_at(frame, 0);
    pkt.src_mac = mac_at(frame, 6);
    if (be16(frame, 12) != kEtherTypeIpv4) throw FrameDecodeError(DecodeErrorKind::NotIPv4, "ethertype is not IPv4");

    const std::size_t ip = kEthernetHeaderLen;
    if (frame.size() < ip + 20) throw FrameDecodeError(DecodeErrorKind::TruncatedFrame, "truncated IPv4 header");
    if ((frame[ip] >> 4) != 4) throw FrameDecodeError(DecodeErrorKind::NotIPv4, "IP version is not 4");
    const std::size_t ihl = frame[ip] & 0x0f;
    if (ihl < 5) throw FrameDecodeError(DecodeErrorKind::BadHeaderLength, "IHL below 5");
    const std::size_t ip_header_len = ihl * 4;
    if (frame.size() < ip + ip_header_len) throw FrameDecodeError(DecodeErrorKind::TruncatedFrame, "truncated IPv4 options");

    pkt.ip_proto = frame[ip + 9];
    pkt.src_ip = Ipv4Address(be32(frame, ip + 12));
    pkt.dst_ip = Ipv4Address(be32(frame, ip + 16));
    pkt.payload_offset = ip + ip_header_len;
    pkt.payload = frame.subspan(pkt.payload_offset, 0);
    if (!pkt.is_tcp()) return pkt;

    const std::size_t tcp = ip + ip_header_len;
    if (frame.size() < tcp + 20) throw FrameDecodeError(DecodeErrorKind::TruncatedFrame, "truncated TCP header");
    pkt.src_port = be16(frame, tcp);
    pkt.dst_port = be16(frame, tcp + 2);
    pkt.seq = be32(frame, tcp + 4);
    pkt.ack = be32(frame, tcp + 8);
    const std::size_t data_offset = frame[tcp + 12] >> 4;
    if (data_offset < 5) throw FrameDecodeError(DecodeErrorKind::BadHeaderLength, "TCP data offset below 5");
    const std::size_t payload_start = tcp + data_offset * 4;
    if (frame.size() < payload_start) throw FrameDecodeError(DecodeErrorKind::TruncatedFrame, "truncated TCP options");

    std::size_t payload_end = frame.size();
    const std::size_t ip_end = ip + be16(frame, ip + 2);
    if (ip_end >= payload_start && ip_end < payload_end) payload_end = ip_end;

    pkt.payload_offset = payload_start;
    pkt.payload = frame.subspan(payload_start, payload_end - payload_start);
    return pkt;
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::Outbound: return "outbound";
        case Direction::Inbound: return "inbound";
        case Direction::Other: return "other";
    }
    return "other";
}

Direction classify_direction(const DecodedPacket& pkt, const MacAddress& local_mac) {
    if (pkt.src_mac == local_mac) return Direction::Outbound;
    if (pkt.dst_mac == local_mac) return Direction::Inbound;
    return Direction::Other;
}

}  // namespace netprofile
