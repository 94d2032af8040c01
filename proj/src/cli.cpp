#include "netprofile/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "netprofile/control_api.hpp"
#include "netprofile/fingerprint.hpp"
#include "netprofile/fs_util.hpp"
#include "netprofile/service.hpp"

namespace netprofile {

namespace fs = std::filesystem;

namespace {

class ConnectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Endpoint {
    std::string host = "127.0.0.1";
    int port = 7878;
};

Endpoint parse_endpoint(const std::string& addr) {
    Endpoint ep;
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--api", "expected host:port");
    ep.host = addr.substr(0, colon);
    try {
        ep.port = std::stoi(addr.substr(colon + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--api", "bad port in '" + addr + "'");
    }
    return ep;
}

struct Reply {
    int status = 0;
    Json body;
};

Reply call_api(const Endpoint& ep, const std::string& method, const std::string& path, const std::string& body = {}) {
    httplib::Client client(ep.host, ep.port);
    client.set_connection_timeout(5);
    client.set_read_timeout(60);
    httplib::Result res;
    if (method == "GET") {
        res = client.Get(path);
    } else if (method == "PUT") {
        res = client.Put(path, body, "application/json");
    } else {
        res = client.Post(path, body, "application/json");
    }
    if (!res) {
        throw ConnectionError("cannot reach daemon at " + ep.host + ":" + std::to_string(ep.port) + ": " + httplib::to_string(res.error()));
    }
    Reply reply{res->status, Json::object()};
    try {
        reply.body = Json::parse(res->body);
    } catch (const Json::exception&) {
        reply.body = Json{{"code", res->status}, {"message", res->body}};
    }
    return reply;
}

std::string describe_event(const Json& ev) {
    const std::string kind = ev.value("kind", "");
    const Json& p = ev["payload"];
    std::string line = "#" + std::to_string(ev.value("seq", 0)) + " " + kind;
    if (kind == "UnknownNetwork") {
        line += " " + p.value("network_id", "");
    } else if (kind == "ProfileApplied") {
        line += " " + p.value("network_id", "");
        if (p.contains("error") && p["error"].is_string()) return line + " error: " + p["error"].get<std::string>();
        std::string parts;
        for (const auto& r : p["reports"]) {
            if (!parts.empty()) parts += ", ";
            parts += r.value("modifier_name", "");
            if (r.contains("error") && r["error"].is_object()) {
                parts += " error " + r["error"].value("code", "");
            } else if (r.contains("launched") && r["launched"].is_string()) {
                parts += " launched '" + r["launched"].get<std::string>() + "'";
            } else {
                parts += r.value("changed", false) ? " changed" : " unchanged";
            }
        }
        if (!parts.empty()) line += ": " + parts;
    } else if (kind == "SafeSite") {
        line += " " + p.value("url", "");
    } else if (kind == "MediaStream") {
        line += " " + p.value("content_type", "") + " port " + std::to_string(p.value("dst_port", 0)) + " length " +
                std::to_string(p.value("content_length", std::uint64_t{0}));
    }
    return line;
}

void print_events(std::ostream& out, const Json& events) {
    for (const auto& ev : events) out << describe_event(ev) << '\n';
}

int report_error(std::ostream& err, const Reply& reply) {
    err << "error " << reply.status << ": " << reply.body.value("message", std::string("request failed")) << '\n';
    return kExitApiError;
}

volatile std::sig_atomic_t g_stop = 0;

int run_daemon(const std::string& config_path, std::ostream& out, std::ostream& err) {
    const char* home = std::getenv("HOME");
    ParsedConfig parsed{default_config(home ? home : "."), {}};
    if (!config_path.empty()) {
        const auto text = read_file(config_path);
        if (!text) {
            err << "config file not found: " << config_path << '\n';
            return kExitUsage;
        }
        parsed = parse_config(*text, parsed.config.home_root);
    }
    for (const auto& w : parsed.warnings) spdlog::warn("config: {}", w);
    const DaemonConfig& config = parsed.config;

    std::unique_ptr<NetworkProbe> probe;
    if (config.interface_report) {
        probe = std::make_unique<FileProbe>(*config.interface_report, config.resolver_config);
    } else {
        probe = std::make_unique<CommandProbe>(config.resolver_config);
    }

    DaemonService service(config, std::move(probe));
    for (const auto& w : service.warnings()) spdlog::warn("{}", w);
    ApiHandler handler(service);
    ApiServer server(handler, config.api_host, config.api_port, config.webui_dir);

    g_stop = 0;
    std::signal(SIGINT, [](int) { g_stop = 1; });
    std::signal(SIGTERM, [](int) { g_stop = 1; });

    service.start();
    const auto port = server.start();
    out << "listening on " << config.api_host << ":" << port << std::endl;
    spdlog::info("repository {}", (config.home_root / ".networkdaemon").string());
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
    server.stop();
    service.stop();
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Per-network application profiles and traffic notifications", "netprofiled"};
    app.require_subcommand(1);

    std::string api = "127.0.0.1:7878";
    bool json = false;
    app.add_option("--api", api, "daemon API address host:port");
    app.add_flag("--json", json, "print machine-readable JSON");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run the daemon in the foreground");
    run->add_option("--config,-c", config_path, "config file (key=value)");

    auto* status = app.add_subcommand("status", "show the current network");

    auto* profile = app.add_subcommand("profile", "inspect or edit stored profiles");
    profile->require_subcommand(1);
    auto* plist = profile->add_subcommand("list", "list stored profiles");
    std::string profile_id;
    auto* pshow = profile->add_subcommand("show", "show one profile");
    pshow->add_option("id", profile_id, "network id")->required();
    std::vector<std::string> assignments;
    auto* pset = profile->add_subcommand("set", "create or update a profile from key=value pairs");
    pset->add_option("id", profile_id, "network id")->required();
    pset->add_option("assignments", assignments, "key=value pairs, e.g. homepage_url=http://www.office.com")->required();

    std::string apply_id;
    auto* apply = app.add_subcommand("apply", "apply a stored profile now");
    apply->add_option("id", apply_id, "network id")->required();

    std::string capture;
    bool home = false;
    bool not_home = false;
    std::string local_mac;
    auto* replay = app.add_subcommand("replay", "feed a capture file through the detectors");
    replay->add_option("file", capture, "capture file")->required();
    auto* home_flag = replay->add_flag("--home", home, "treat the network as home");
    replay->add_flag("--not-home", not_home, "treat the network as not home")->excludes(home_flag);
    replay->add_option("--local-mac", local_mac, "hardware address of this machine");

    std::string ifreport;
    std::string resolv;
    auto* fingerprint = app.add_subcommand("fingerprint", "derive the network id from captured reports");
    fingerprint->add_option("interface_report", ifreport, "ifconfig output")->required();
    fingerprint->add_option("resolver_config", resolv, "resolv.conf")->required();

    std::uint64_t since = 0;
    double timeout = 0;
    auto* events = app.add_subcommand("events", "list notification events");
    events->add_option("--since", since, "only events after this seq");
    events->add_option("--timeout", timeout, "long-poll seconds");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*run) return run_daemon(config_path, out, err);

        if (*fingerprint) {
            const auto report = read_file(ifreport);
            const auto resolver = read_file(resolv);
            if (!report || !resolver) {
                err << "cannot read " << (!report ? ifreport : resolv) << '\n';
                return kExitUsage;
            }
            const auto active = select_active_interface(parse_interface_report(*report));
            if (!active) {
                err << "no interface is up with an IPv4 address\n";
                return kExitApiError;
            }
            const auto id = derive_network_id(*active, parse_resolver_config(*resolver));
            if (json) {
                out << Json{{"network_id", id.str()}, {"interface", active->name}, {"link", std::string(to_string(active->link))}}.dump()
                    << '\n';
            } else {
                out << id.str() << '\n';
            }
            return kExitOk;
        }

        const Endpoint ep = parse_endpoint(api);

        if (*status) {
            const auto reply = call_api(ep, "GET", "/status");
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                const std::string state = reply.body.value("state", "");
                out << state;
                if (reply.body["network_id"].is_string()) out << ' ' << reply.body["network_id"].get<std::string>();
                if (state == "known") out << (reply.body.value("is_home", false) ? " (home)" : " (away)");
                out << '\n';
            }
            return kExitOk;
        }

        if (*plist) {
            const auto reply = call_api(ep, "GET", "/profiles");
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                for (const auto& item : reply.body["profiles"]) {
                    out << item.value("network_id", "");
                    if (item.contains("error")) {
                        out << "  [unreadable: " << item.value("error", "") << "]";
                    } else {
                        if (!item.value("display_name", "").empty()) out << "  " << item.value("display_name", "");
                        if (item.value("is_home", false)) out << "  [home]";
                    }
                    out << '\n';
                }
            }
            return kExitOk;
        }

        if (*pshow) {
            if (!NetworkId::is_valid(profile_id)) {
                err << "invalid network id '" << profile_id << "'\n";
                return kExitUsage;
            }
            const auto reply = call_api(ep, "GET", "/profiles/" + profile_id);
            if (reply.status == 404) {
                err << "profile '" << profile_id << "' not found\n";
                return kExitApiError;
            }
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                out << encode_profile(profile_from_json(reply.body["profile"]));
                for (const auto& w : reply.body["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
            }
            return kExitOk;
        }

        if (*pset) {
            if (!NetworkId::is_valid(profile_id)) {
                err << "invalid network id '" << profile_id << "'\n";
                return kExitUsage;
            }
            NetworkProfile updated;
            const auto current = call_api(ep, "GET", "/profiles/" + profile_id);
            if (current.status == 200) {
                updated = profile_from_json(current.body["profile"]);
            } else if (current.status != 404) {
                return report_error(err, current);
            }
            for (const auto& a : assignments) {
                try {
                    if (!apply_profile_assignment(updated, a)) {
                        err << "unknown profile key in '" << a << "'\n";
                        return kExitUsage;
                    }
                } catch (const DecodeFailure& e) {
                    err << e.what() << '\n';
                    return kExitUsage;
                }
            }
            const auto reply = call_api(ep, "PUT", "/profiles/" + profile_id, to_json(updated).dump());
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                out << "stored " << profile_id << '\n';
                print_events(out, reply.body["events"]);
            }
            return kExitOk;
        }

        if (*apply) {
            const auto reply = call_api(ep, "POST", "/profiles/" + apply_id + "/apply");
            if (reply.status == 404) {
                err << "profile '" << apply_id << "' not found\n";
                return kExitApiError;
            }
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                print_events(out, reply.body["events"]);
            }
            return kExitOk;
        }

        if (*replay) {
            Json body{{"capture", fs::absolute(capture).string()}};
            if (home) body["is_home"] = true;
            if (not_home) body["is_home"] = false;
            if (!local_mac.empty()) body["local_mac"] = local_mac;
            const auto reply = call_api(ep, "POST", "/replay", body.dump());
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                print_events(out, reply.body["events"]);
            }
            return kExitOk;
        }

        if (*events) {
            std::string path = "/events?since=" + std::to_string(since);
            if (timeout > 0) path += "&timeout=" + std::to_string(timeout);
            const auto reply = call_api(ep, "GET", path);
            if (reply.status != 200) return report_error(err, reply);
            if (json) {
                out << reply.body.dump() << '\n';
            } else {
                print_events(out, reply.body["events"]);
            }
            return kExitOk;
        }
    } catch (const ConnectionError& e) {
        err << e.what() << '\n';
        return kExitApiError;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitApiError;
    }
    return kExitUsage;
}

}  // namespace netprofile
