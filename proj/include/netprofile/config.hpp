#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netprofile/net_types.hpp"

namespace netprofile {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DaemonConfig {
    std::filesystem::path home_root;          // repository lives in <home_root>/.networkdaemon
    std::filesystem::path sandbox_root;       // application config files; defaults to home_root
    double poll_interval_secs = 2.0;
    std::size_t cache_capacity = 8;
    double session_window_secs = 10.0;
    std::set<std::string> media_subtypes;

    std::string api_host = "127.0.0.1";
    std::uint16_t api_port = 7878;

    std::optional<std::filesystem::path> visit_log;
    std::optional<std::filesystem::path> interface_report;  // read instead of running ifconfig
    std::filesystem::path resolver_config = "/etc/resolv.conf";
    std::string capture_interface;                          // empty: no live capture
    std::optional<MacAddress> local_mac;
    std::optional<std::filesystem::path> webui_dir;
    bool launch_commands = true;                            // false: record email commands only
};

struct ParsedConfig {
    DaemonConfig config;
    std::vector<std::string> warnings;
};

/// `key=value` lines; `#` comments and blank lines ignored. Unknown keys are
/// warnings, bad values throw ConfigError. `default_home` seeds home_root.
ParsedConfig parse_config(std::string_view text, const std::filesystem::path& default_home);

DaemonConfig default_config(const std::filesystem::path& home);

}  // namespace netprofile
