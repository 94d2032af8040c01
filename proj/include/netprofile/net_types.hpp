#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace netprofile {

/// 48-bit Ethernet hardware address.
class MacAddress {
public:
    using Bytes = std::array<std::uint8_t, 6>;

    constexpr MacAddress() = default;
    constexpr explicit MacAddress(const Bytes& bytes) : bytes_(bytes) {}

    /// Accepts `aa:bb:cc:dd:ee:ff` (also `-` separated), case-insensitive.
    static std::optional<MacAddress> parse(std::string_view text);

    [[nodiscard]] const Bytes& bytes() const { return bytes_; }
    [[nodiscard]] std::string to_string() const;

    friend constexpr auto operator<=>(const MacAddress&, const MacAddress&) = default;

private:
    Bytes bytes_{};
};

/// IPv4 address held in host order.
class Ipv4Address {
public:
    constexpr Ipv4Address() = default;
    constexpr explicit Ipv4Address(std::uint32_t value) : value_(value) {}

    /// Strict dotted quad: four decimal octets 0-255, no leading sign or spaces.
    static std::optional<Ipv4Address> parse(std::string_view text);

    [[nodiscard]] constexpr std::uint32_t value() const { return value_; }
    [[nodiscard]] std::string to_string() const;

    friend constexpr auto operator<=>(const Ipv4Address&, const Ipv4Address&) = default;

private:
    std::uint32_t value_ = 0;
};

/// Capture timestamp, seconds + microseconds.
struct Timestamp {
    std::int64_t sec = 0;
    std::int64_t usec = 0;

    [[nodiscard]] double seconds() const { return static_cast<double>(sec) + static_cast<double>(usec) / 1e6; }
    [[nodiscard]] std::int64_t total_micros() const { return sec * 1'000'000 + usec; }

    friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

}  // namespace netprofile
