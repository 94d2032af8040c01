#include "netprofile/control_api.hpp"

#include <httplib.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <vector>

#include "netprofile/capture.hpp"

namespace netprofile {

ApiResponse api_error(int code, const std::string& message) {
    return {code, Json{{"code", code}, {"message", message}}};
}

namespace {

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const auto slash = path.find('/', start);
        const auto end = slash == std::string::npos ? path.size() : slash;
        if (end > start) parts.push_back(path.substr(start, end - start));
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    return parts;
}

int http_status(DaemonErrorCode code) {
    switch (code) {
        case DaemonErrorCode::WrongPendingId:
        case DaemonErrorCode::NotPending: return 409;
        case DaemonErrorCode::NotFound: return 404;
        case DaemonErrorCode::InvalidInput: return 400;
        case DaemonErrorCode::Storage: return 500;
    }
    return 500;
}

Json events_json(const std::vector<NotificationEvent>& events) {
    Json out = Json::array();
    for (const auto& ev : events) out.push_back(to_json(ev));
    return out;
}

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    return Json::parse(body);
}

}  // namespace

ApiResponse ApiHandler::handle(const ApiRequest& request) {
    const auto parts = split_path(request.path);
    const auto& m = request.method;
    try {
        if (parts.size() == 1 && parts[0] == "status" && m == "GET") return status();
        if (parts.size() == 1 && parts[0] == "profiles" && m == "GET") return list_profiles();
        if (parts.size() == 2 && parts[0] == "profiles" && m == "GET") return show_profile(parts[1]);
        if (parts.size() == 2 && parts[0] == "profiles" && m == "PUT") return put_profile(parts[1], request.body);
        if (parts.size() == 3 && parts[0] == "profiles" && parts[2] == "apply" && m == "POST") return apply_profile_now(parts[1]);
        if (parts.size() == 3 && parts[0] == "pending" && parts[2] == "profile" && m == "POST") {
            return submit_pending(parts[1], request.body);
        }
        if (parts.size() == 1 && parts[0] == "events" && m == "GET") return events(request.query);
        if (parts.size() == 1 && parts[0] == "replay" && m == "POST") return replay(request.body);
        return api_error(404, "no route for " + m + " " + request.path);
    } catch (const DaemonError& e) {
        return api_error(http_status(e.code()), e.what());
    } catch (const InvalidNetworkId& e) {
        return api_error(400, e.what());
    } catch (const InvalidProfile& e) {
        return api_error(400, e.what());
    } catch (const Json::exception& e) {
        return api_error(400, std::string("bad JSON: ") + e.what());
    } catch (const DecodeFailure& e) {
        return api_error(500, e.what());
    } catch (const std::exception& e) {
        return api_error(500, e.what());
    }
}

ApiResponse ApiHandler::status() {
    Json body;
    daemon_.run([&](Daemon& d) { body = status_json(d.state()); });
    return {200, body};
}

ApiResponse ApiHandler::list_profiles() {
    Json items = Json::array();
    daemon_.run([&](Daemon& d) {
        auto& repo = d.store().repository();
        for (const auto& id : repo.list()) {
            Json item{{"network_id", id.str()}};
            try {
                const auto loaded = repo.load(id);
                if (!loaded) continue;
                item["display_name"] = loaded->profile.display_name;
                item["is_home"] = loaded->profile.is_home;
            } catch (const DecodeFailure& e) {
                item["error"] = e.what();
            }
            items.push_back(std::move(item));
        }
    });
    return {200, Json{{"profiles", items}}};
}

ApiResponse ApiHandler::show_profile(const std::string& raw_id) {
    const NetworkId id(raw_id);
    std::optional<NetworkProfile> profile;
    std::vector<std::string> warnings;
    daemon_.run([&](Daemon& d) { profile = d.store().lookup(id, &warnings); });
    if (!profile) return api_error(404, "profile '" + raw_id + "' not found");
    return {200, Json{{"network_id", raw_id}, {"profile", to_json(*profile)}, {"warnings", warnings}}};
}

ApiResponse ApiHandler::put_profile(const std::string& raw_id, const std::string& body) {
    const NetworkId id(raw_id);
    const NetworkProfile profile = profile_from_json(parse_body(body));
    std::vector<NotificationEvent> emitted;
    daemon_.run([&](Daemon& d) { emitted = d.upsert_profile(id, profile); });
    return {200, Json{{"network_id", raw_id}, {"profile", to_json(profile)}, {"events", events_json(emitted)}}};
}

ApiResponse ApiHandler::apply_profile_now(const std::string& raw_id) {
    const NetworkId id(raw_id);
    std::vector<NotificationEvent> emitted;
    daemon_.run([&](Daemon& d) { emitted = d.apply_stored(id); });
    return {200, Json{{"events", events_json(emitted)}}};
}

ApiResponse ApiHandler::submit_pending(const std::string& raw_id, const std::string& body) {
    const NetworkId id(raw_id);
    const NetworkProfile profile = profile_from_json(parse_body(body));
    std::vector<NotificationEvent> emitted;
    Json status;
    daemon_.run([&](Daemon& d) {
        emitted = d.submit_pending_profile(id, profile);
        status = status_json(d.state());
    });
    return {200, Json{{"status", status}, {"events", events_json(emitted)}}};
}

ApiResponse ApiHandler::events(const std::map<std::string, std::string>& query) {
    std::uint64_t since = 0;
    double timeout = 0;
    if (const auto it = query.find("since"); it != query.end()) {
        const auto& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), since);
        if (ec != std::errc() || ptr != s.data() + s.size()) return api_error(400, "since must be a non-negative integer");
    }
    if (const auto it = query.find("timeout"); it != query.end()) {
        const auto& s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), timeout);
        if (ec != std::errc() || ptr != s.data() + s.size() || timeout < 0) return api_error(400, "timeout must be a non-negative number");
        timeout = std::min(timeout, kMaxPollSecs);
    }
    const auto wait = std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(timeout * 1000)));
    const auto found = timeout > 0 ? daemon_.events().wait_since(since, wait) : daemon_.events().since(since);
    return {200, Json{{"events", events_json(found)}, {"last_seq", daemon_.events().last_seq()}}};
}

ApiResponse ApiHandler::replay(const std::string& body) {
    const Json doc = parse_body(body);
    if (!doc.is_object() || !doc.contains("capture") || !doc["capture"].is_string()) {
        return api_error(400, "replay needs a \"capture\" file path");
    }
    std::optional<bool> is_home;
    if (doc.contains("is_home") && !doc["is_home"].is_null()) {
        if (!doc["is_home"].is_boolean()) return api_error(400, "is_home must be a boolean");
        is_home = doc["is_home"].get<bool>();
    }
    std::optional<MacAddress> local_mac;
    if (doc.contains("local_mac") && !doc["local_mac"].is_null()) {
        local_mac = doc["local_mac"].is_string() ? MacAddress::parse(doc["local_mac"].get<std::string>()) : std::nullopt;
        if (!local_mac) return api_error(400, "local_mac must be a MAC address string");
    }

    const std::filesystem::path path = doc["capture"].get<std::string>();
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return api_error(404, "capture file not found: " + path.string());
    std::vector<RawFrame> frames;
    try {
        frames = read_capture_file(path);
    } catch (const CaptureError& e) {
        return api_error(400, e.what());
    }

    ReplayResult result;
    daemon_.run([&](Daemon& d) { result = d.replay(frames, is_home, local_mac); });
    return {200, Json{{"frames", result.frames}, {"undecodable", result.undecodable}, {"events", events_json(result.events)}}};
}

ApiServer::ApiServer(ApiHandler& handler, std::string host, std::uint16_t port, std::optional<std::filesystem::path> static_dir)
    : handler_(handler), host_(std::move(host)), port_(port), server_(std::make_unique<httplib::Server>()) {
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest request{req.method, req.path, {}, req.body};
        for (const auto& [key, value] : req.params) request.query.emplace(key, value);
        const ApiResponse response = handler_.handle(request);
        res.status = response.status;
        res.set_content(response.body.dump(), "application/json");
    };
    const char* api_routes = R"(/(status|profiles|pending|events|replay)(/.*)?)";
    server_->Get(api_routes, dispatch);
    server_->Put(api_routes, dispatch);
    server_->Post(api_routes, dispatch);
    if (static_dir) server_->set_mount_point("/", static_dir->string());
    server_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        res.set_content(Json{{"code", res.status}, {"message", "no route for " + req.method + " " + req.path}}.dump(), "application/json");
    });
}

ApiServer::~ApiServer() { stop(); }

std::uint16_t ApiServer::start() {
    int bound = port_;
    if (port_ == 0) {
        bound = server_->bind_to_any_port(host_);
    } else if (!server_->bind_to_port(host_, port_)) {
        bound = -1;
    }
    if (bound <= 0) throw std::runtime_error("cannot bind API to " + host_ + ":" + std::to_string(port_));
    port_ = static_cast<std::uint16_t>(bound);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    return port_;
}

void ApiServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace netprofile
