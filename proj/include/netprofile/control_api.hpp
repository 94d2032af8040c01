#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "netprofile/json_codec.hpp"
#include "netprofile/service.hpp"

namespace httplib {
class Server;
}

namespace netprofile {

struct ApiRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    Json body;
};

/// Maps the loopback endpoints onto daemon operations:
///
///     GET  /status                  GET  /events?since=n&timeout=s
///     GET  /profiles                POST /pending/{id}/profile
///     GET  /profiles/{id}           POST /profiles/{id}/apply
///     PUT  /profiles/{id}           POST /replay
///
/// Errors are `{code, message}` with code 400, 404, 409 or 500.
class ApiHandler {
public:
    explicit ApiHandler(DaemonAccess& daemon) : daemon_(daemon) {}

    ApiResponse handle(const ApiRequest& request);

    /// Upper bound for the long-poll `timeout` parameter.
    static constexpr double kMaxPollSecs = 30.0;

private:
    ApiResponse status();
    ApiResponse list_profiles();
    ApiResponse show_profile(const std::string& id);
    ApiResponse put_profile(const std::string& id, const std::string& body);
    ApiResponse apply_profile_now(const std::string& id);
    ApiResponse submit_pending(const std::string& id, const std::string& body);
    ApiResponse events(const std::map<std::string, std::string>& query);
    ApiResponse replay(const std::string& body);

    DaemonAccess& daemon_;
};

ApiResponse api_error(int code, const std::string& message);

/// cpp-httplib front end bound to a loopback address.
class ApiServer {
public:
    ApiServer(ApiHandler& handler, std::string host, std::uint16_t port, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds and serves on a background thread; port 0 picks a free port.
    /// Returns the bound port. Throws std::runtime_error when binding fails.
    std::uint16_t start();
    void stop();

private:
    ApiHandler& handler_;
    std::string host_;
    std::uint16_t port_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace netprofile
