#include "frame_builder.hpp"

namespace netprofile::testing {

namespace {

void put16(std::vector<std::uint8_t>& b, std::size_t at, std::uint16_t v) {
    b[at] = static_cast<std::uint8_t>(v >> 8);
    b[at + 1] = static_cast<std::uint8_t>(v);
}

void put32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) {
    put16(b, at, static_cast<std::uint16_t>(v >> 16));
    put16(b, at + 2, static_cast<std::uint16_t>(v));
}

void append32(std::vector<std::uint8_t>& out, std::uint32_t v, bool big_endian) {
    for (int i = 0; i < 4; ++i) {
        const int shift = big_endian ? 24 - 8 * i : 8 * i;
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void append16(std::vector<std::uint8_t>& out, std::uint16_t v, bool big_endian) {
    if (big_endian) {
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v));
    } else {
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
    }
}

}  // namespace

std::vector<std::uint8_t> build_frame(const FrameSpec& spec) {
    const std::size_t ip_len = spec.ihl * 4u;
    const std::size_t tcp_len = spec.protocol == 6 ? spec.data_offset * 4u : 8u;
    const std::size_t total = 14 + ip_len + tcp_len + spec.payload.size() + spec.trailing_padding;
    std::vector<std::uint8_t> b(total, 0);

    for (int i = 0; i < 6; ++i) {
        b[i] = spec.dst_mac.bytes()[i];
        b[6 + i] = spec.src_mac.bytes()[i];
    }
    put16(b, 12, spec.ethertype);

    const std::size_t ip = 14;
    b[ip] = static_cast<std::uint8_t>((spec.version << 4) | (spec.ihl & 0x0f));
    put16(b, ip + 2, static_cast<std::uint16_t>(ip_len + tcp_len + spec.payload.size()));
    put16(b, ip + 4, 0x1c46);
    b[ip + 6] = 0x40;  // don't fragment
    b[ip + 8] = 64;
    b[ip + 9] = spec.protocol;
    put32(b, ip + 12, spec.src_ip);
    put32(b, ip + 16, spec.dst_ip);
    for (std::size_t i = ip + 20; i < ip + ip_len; ++i) b[i] = 1;

    const std::size_t tcp = ip + ip_len;
    put16(b, tcp, spec.src_port);
    put16(b, tcp + 2, spec.dst_port);
    if (spec.protocol == 6) {
        put32(b, tcp + 4, spec.seq);
        put32(b, tcp + 8, spec.ack);
        b[tcp + 12] = static_cast<std::uint8_t>(spec.data_offset << 4);
        b[tcp + 13] = 0x18;  // PSH|ACK
        put16(b, tcp + 14, 0xfaf0);
        for (std::size_t i = tcp + 20; i < tcp + tcp_len; ++i) b[i] = 1;
    } else {
        put16(b, tcp + 4, static_cast<std::uint16_t>(8 + spec.payload.size()));
    }
    std::copy(spec.payload.begin(), spec.payload.end(), b.begin() + static_cast<std::ptrdiff_t>(tcp + tcp_len));
    return b;
}

RawFrame frame_at(const FrameSpec& spec, std::int64_t sec, std::int64_t usec) {
    return RawFrame{build_frame(spec), Timestamp{sec, usec}};
}

std::vector<std::uint8_t> encode_capture(const std::vector<RawFrame>& frames, bool big_endian, std::uint32_t snaplen,
                                         std::uint32_t link_type) {
    std::vector<std::uint8_t> out;
    append32(out, 0xa1b2c3d4, big_endian);
    append16(out, 2, big_endian);
    append16(out, 4, big_endian);
    append32(out, 0, big_endian);  // thiszone
    append32(out, 0, big_endian);  // sigfigs
    append32(out, snaplen, big_endian);
    append32(out, link_type, big_endian);
    for (const auto& f : frames) {
        append32(out, static_cast<std::uint32_t>(f.ts.sec), big_endian);
        append32(out, static_cast<std::uint32_t>(f.ts.usec), big_endian);
        append32(out, static_cast<std::uint32_t>(f.bytes.size()), big_endian);
        append32(out, static_cast<std::uint32_t>(f.bytes.size()), big_endian);
        out.insert(out.end(), f.bytes.begin(), f.bytes.end());
    }
    return out;
}

}  // namespace netprofile::testing
