#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netprofile/net_types.hpp"
#include "netprofile/network_id.hpp"

namespace netprofile {

enum class LinkKind { Ethernet, PointToPoint, Wireless };

std::string_view to_string(LinkKind kind);

struct InterfaceSnapshot {
    std::string name;
    LinkKind link = LinkKind::Ethernet;
    std::optional<Ipv4Address> ipv4;
    std::optional<MacAddress> hw_addr;  // absent for PointToPoint
    bool up = false;

    friend bool operator==(const InterfaceSnapshot&, const InterfaceSnapshot&) = default;
};

struct DnsConfig {
    std::vector<Ipv4Address> nameservers;

    friend bool operator==(const DnsConfig&, const DnsConfig&) = default;
};

class MalformedReport : public std::runtime_error {
public:
    MalformedReport(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class NoAddress : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses ifconfig-style output. Blocks are separated by blank lines and start
/// with the interface name in column 0. Recognized keys: `Link encap:<kind>`,
/// `inet addr:<ip>`, `HWaddr <mac>`, the `UP` flag, and `ESSID:` / `IEEE 802.11`
/// (merged iwconfig output) marking an Ethernet-framed link as wireless.
/// Loopback blocks are dropped. Throws MalformedReport.
std::vector<InterfaceSnapshot> parse_interface_report(std::string_view report);

/// Collects `nameserver <ip>` lines in order. Entries that are not IPv4 are skipped.
DnsConfig parse_resolver_config(std::string_view text);

/// Point-to-point links are keyed by address alone; Ethernet and wireless links
/// by `<ip>_<first nameserver>` or `<ip>_nodns`. Throws NoAddress.
NetworkId derive_network_id(const InterfaceSnapshot& snapshot, const DnsConfig& dns);

/// First interface that is up and has an address.
std::optional<InterfaceSnapshot> select_active_interface(const std::vector<InterfaceSnapshot>& interfaces);

}  // namespace netprofile
