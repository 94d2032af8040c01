#include "netprofile/fingerprint.hpp"

#include "netprofile/text.hpp"

namespace netprofile {

std::string_view to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::Ethernet: return "ethernet";
        case LinkKind::PointToPoint: return "point-to-point";
        case LinkKind::Wireless: return "wireless";
    }
    return "unknown";
}

MalformedReport::MalformedReport(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

enum class EncapKind { Ethernet, PointToPoint, Loopback };

struct Line {
    std::size_t number;
    std::string_view content;
};

/// Value after `key` up to the next run of two spaces or end of line.
std::string_view field_after(std::string_view line, std::size_t key_end) {
    auto rest = line.substr(key_end);
    const auto gap = rest.find("  ");
    return text::trim(rest.substr(0, gap));
}

std::optional<InterfaceSnapshot> parse_block(const std::vector<Line>& block) {
    const Line& head = block.front();
    if (head.content.front() == ' ' || head.content.front() == '\t') {
        throw MalformedReport(head.number, "interface block does not start with a name");
    }

    InterfaceSnapshot snap;
    snap.name = std::string(text::split_ws(head.content).front());
    std::optional<EncapKind> encap;
    std::size_t encap_line = head.number;
    bool wireless = false;

    for (const Line& line : block) {
        const std::string_view s = line.content;

        if (const auto pos = s.find("Link encap:"); pos != std::string_view::npos) {
            auto kind = field_after(s, pos + 11);
            if (const auto hw = kind.find(" HWaddr"); hw != std::string_view::npos) kind = text::trim(kind.substr(0, hw));
            encap_line = line.number;
            if (kind == "Ethernet") {
                encap = EncapKind::Ethernet;
            } else if (kind.starts_with("Point-to-Point")) {
                encap = EncapKind::PointToPoint;
            } else if (kind == "Local Loopback") {
                encap = EncapKind::Loopback;
            } else {
                throw MalformedReport(line.number, "unknown link encapsulation '" + std::string(kind) + "'");
            }
        }

        if (const auto pos = s.find("HWaddr "); pos != std::string_view::npos) {
            const auto tokens = text::split_ws(s.substr(pos + 7));
            if (tokens.empty()) throw MalformedReport(line.number, "HWaddr without value");
            snap.hw_addr = MacAddress::parse(tokens.front());
            if (!snap.hw_addr) throw MalformedReport(line.number, "bad hardware address '" + std::string(tokens.front()) + "'");
        }

        if (const auto pos = s.find("inet addr:"); pos != std::string_view::npos) {
            const auto tokens = text::split_ws(s.substr(pos + 10));
            if (tokens.empty()) throw MalformedReport(line.number, "inet addr without value");
            snap.ipv4 = Ipv4Address::parse(tokens.front());
            if (!snap.ipv4) throw MalformedReport(line.number, "bad IPv4 address '" + std::string(tokens.front()) + "'");
        }

        if (s.find("ESSID:") != std::string_view::npos || s.find("IEEE 802.11") != std::string_view::npos) {
            wireless = true;
        }

        for (const auto token : text::split_ws(s)) {
            if (token == "UP") snap.up = true;
        }
    }

    if (!encap) throw MalformedReport(encap_line, "interface '" + snap.name + "' has no Link encap");
    switch (*encap) {
        case EncapKind::Loopback:
            return std::nullopt;
        case EncapKind::PointToPoint:
            snap.link = LinkKind::PointToPoint;
            snap.hw_addr.reset();
            break;
        case EncapKind::Ethernet:
            snap.link = wireless ? LinkKind::Wireless : LinkKind::Ethernet;
            if (!snap.hw_addr) throw MalformedReport(encap_line, "ethernet interface '" + snap.name + "' has no HWaddr");
            break;
    }
    return snap;
}

}  // namespace

std::vector<InterfaceSnapshot> parse_interface_report(std::string_view report) {
    std::vector<InterfaceSnapshot> out;
    std::vector<Line> block;
    const auto flush = [&] {
        if (block.empty()) return;
        if (auto snap = parse_block(block)) out.push_back(std::move(*snap));
        block.clear();
    };

    std::size_t number = 0;
    for (const auto line : text::split_lines(report)) {
        ++number;
        if (text::trim(line).empty()) {
            flush();
        } else {
            block.push_back({number, line});
        }
    }
    flush();
    return out;
}

DnsConfig parse_resolver_config(std::string_view text) {
    DnsConfig dns;
    for (const auto line : text::split_lines(text)) {
        const auto tokens = text::split_ws(line);
        if (tokens.size() < 2 || tokens[0] != "nameserver") continue;
        if (auto ip = Ipv4Address::parse(tokens[1])) dns.nameservers.push_back(*ip);
    }
    return dns;
}

NetworkId derive_network_id(const InterfaceSnapshot& snapshot, const DnsConfig& dns) {
    if (!snapshot.ipv4) throw NoAddress("interface '" + snapshot.name + "' has no IPv4 address");
    std::string id = snapshot.ipv4->to_string();
    if (snapshot.link != LinkKind::PointToPoint) {
        id += '_';
        id += dns.nameservers.empty() ? std::string("nodns") : dns.nameservers.front().to_string();
    }
    return NetworkId(std::move(id));
}

std::optional<InterfaceSnapshot> select_active_interface(const std::vector<InterfaceSnapshot>& interfaces) {
    for (const auto& iface : interfaces) {
        if (iface.up && iface.ipv4) return iface;
    }
    return std::nullopt;
}

}  // namespace netprofile
