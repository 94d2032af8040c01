#include "netprofile/net_types.hpp"

#include <charconv>
#include <cstdio>

namespace netprofile {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
    if (text.size() != 17) return std::nullopt;
    Bytes out{};
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t pos = i * 3;
        const int hi = hex_value(text[pos]);
        const int lo = hex_value(text[pos + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        if (i < 5 && text[pos + 2] != ':' && text[pos + 2] != '-') return std::nullopt;
        out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return MacAddress(out);
}

std::string MacAddress::to_string() const {
    char buf[18];
    std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x",
                  bytes_[0], bytes_[1], bytes_[2], bytes_[3], bytes_[4], bytes_[5]);
    return buf;
}

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text) {
    std::uint32_t value = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int octet = 0; octet < 4; ++octet) {
        if (octet > 0) {
            if (p == end || *p != '.') return std::nullopt;
            ++p;
        }
        if (p == end || *p < '0' || *p > '9') return std::nullopt;
        const char* start = p;
        while (p != end && *p >= '0' && *p <= '9') ++p;
        if (p - start > 3) return std::nullopt;
        unsigned part = 0;
        std::from_chars(start, p, part);
        if (part > 255) return std::nullopt;
        value = (value << 8) | part;
    }
    if (p != end) return std::nullopt;
    return Ipv4Address(value);
}

std::string Ipv4Address::to_string() const {
    return std::to_string((value_ >> 24) & 0xff) + '.' + std::to_string((value_ >> 16) & 0xff) + '.' +
           std::to_string((value_ >> 8) & 0xff) + '.' + std::to_string(value_ & 0xff);
}

}  // namespace netprofile
