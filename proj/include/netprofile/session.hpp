#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netprofile/net_types.hpp"

namespace netprofile {

/// Browser navigation session; sub-resources of one page load share it.
struct SessionId {
    std::int64_t value = 0;
    friend constexpr auto operator<=>(const SessionId&, const SessionId&) = default;
};

class SessionResolver {
public:
    virtual ~SessionResolver() = default;
    virtual SessionId resolve(std::string_view url, Timestamp ts) = 0;
};

/// Host part of `scheme://host:port/path`, `host:port` or `host`, lowercased.
std::string url_host(std::string_view url);

/// Groups lookups into sessions by time. A lookup at `ts` joins the session
/// whose window [anchor, anchor + window] contains it; otherwise a fresh id is
/// anchored at `ts`. Searching every allocated window, not only the newest,
/// keeps a replayed capture inside the sessions it created the first time.
class WindowSessionResolver final : public SessionResolver {
public:
    explicit WindowSessionResolver(double window_secs, std::int64_t first_id = 1);
    SessionId resolve(std::string_view url, Timestamp ts) override;

private:
    double window_secs_;
    std::int64_t next_id_;
    std::map<std::int64_t, SessionId> anchors_;  // anchor time (micros) -> session
};

struct VisitRecord {
    std::string host;
    std::int64_t unix_time = 0;
    std::int64_t session_id = 0;

    friend bool operator==(const VisitRecord&, const VisitRecord&) = default;
};

class MalformedVisitLog : public std::runtime_error {
public:
    MalformedVisitLog(std::size_t line, const std::string& what);
};

/// `host <TAB> unix_time <TAB> session_id` lines, ascending time. Blank lines
/// and `#` comments are skipped. Throws MalformedVisitLog.
std::vector<VisitRecord> parse_visit_log(std::string_view text);

/// Latest visit to the url's host at or before `ts` decides the session.
/// Hosts without such a visit fall through to a window resolver whose ids
/// start above every id in the log.
class VisitLogSessionResolver final : public SessionResolver {
public:
    VisitLogSessionResolver(std::vector<VisitRecord> visits, double window_secs);
    SessionId resolve(std::string_view url, Timestamp ts) override;

private:
    std::map<std::string, std::vector<VisitRecord>> by_host_;
    WindowSessionResolver fallback_;
};

}  // namespace netprofile
