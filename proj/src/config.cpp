#include "netprofile/config.hpp"

#include <charconv>

#include "netprofile/detectors.hpp"
#include "netprofile/text.hpp"

namespace netprofile {

namespace {

double parse_positive(std::string_view key, std::string_view value) {
    double out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || !(out > 0)) {
        throw ConfigError(std::string(key) + ": expected a positive number, got '" + std::string(value) + "'");
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value, std::uint64_t max) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || out == 0 || out > max) {
        throw ConfigError(std::string(key) + ": expected an integer in 1.." + std::to_string(max) + ", got '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

}  // namespace

DaemonConfig default_config(const std::filesystem::path& home) {
    DaemonConfig c;
    c.home_root = home;
    c.sandbox_root = home;
    c.media_subtypes = default_media_subtypes();
    return c;
}

ParsedConfig parse_config(std::string_view text, const std::filesystem::path& default_home) {
    ParsedConfig parsed{default_config(default_home), {}};
    DaemonConfig& c = parsed.config;
    bool sandbox_set = false;

    std::size_t number = 0;
    for (const auto raw : text::split_lines(text)) {
        ++number;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(number) + ": expected key=value");
        const auto key = text::trim(line.substr(0, eq));
        const auto value = text::trim(line.substr(eq + 1));

        if (key == "home_root") {
            c.home_root = std::string(value);
        } else if (key == "sandbox_root") {
            c.sandbox_root = std::string(value);
            sandbox_set = true;
        } else if (key == "poll_interval_secs") {
            c.poll_interval_secs = parse_positive(key, value);
        } else if (key == "cache_capacity") {
            c.cache_capacity = parse_unsigned(key, value, 1 << 20);
        } else if (key == "session_window_secs") {
            c.session_window_secs = parse_positive(key, value);
        } else if (key == "media_subtypes") {
            c.media_subtypes.clear();
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const auto item = text::trim(rest.substr(0, comma));
                if (!item.empty()) c.media_subtypes.insert(text::to_lower(item));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
        } else if (key == "api_listen") {
            const auto colon = value.rfind(':');
            if (colon == std::string_view::npos) throw ConfigError("api_listen: expected host:port");
            c.api_host = std::string(value.substr(0, colon));
            c.api_port = static_cast<std::uint16_t>(parse_unsigned(key, value.substr(colon + 1), 65535));
        } else if (key == "visit_log") {
            c.visit_log = std::string(value);
        } else if (key == "interface_report") {
            c.interface_report = std::string(value);
        } else if (key == "resolver_config") {
            c.resolver_config = std::string(value);
        } else if (key == "capture_interface") {
            c.capture_interface = std::string(value);
        } else if (key == "local_mac") {
            c.local_mac = MacAddress::parse(value);
            if (!c.local_mac) throw ConfigError("local_mac: bad MAC address '" + std::string(value) + "'");
        } else if (key == "webui_dir") {
            c.webui_dir = std::string(value);
        } else if (key == "launch_commands") {
            c.launch_commands = parse_bool(key, value);
        } else {
            parsed.warnings.push_back("line " + std::to_string(number) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (!sandbox_set) c.sandbox_root = c.home_root;
    return parsed;
}

}  // namespace netprofile
