#include "netprofile/session.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "netprofile/text.hpp"

namespace netprofile {

std::string url_host(std::string_view url) {
    if (const auto scheme = url.find("://"); scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
    url = url.substr(0, url.find_first_of("/?#"));
    if (const auto at = url.rfind('@'); at != std::string_view::npos) url.remove_prefix(at + 1);
    if (url.starts_with('[')) {
        url = url.substr(1, url.find(']') - 1);
    } else if (const auto colon = url.rfind(':'); colon != std::string_view::npos) {
        url = url.substr(0, colon);
    }
    return text::to_lower(url);
}

WindowSessionResolver::WindowSessionResolver(double window_secs, std::int64_t first_id)
    : window_secs_(window_secs), next_id_(first_id) {}

SessionId WindowSessionResolver::resolve(std::string_view, Timestamp ts) {
    const std::int64_t now = ts.total_micros();
    const auto window = static_cast<std::int64_t>(std::llround(window_secs_ * 1e6));

    // The latest anchor at or before `now` is the only candidate whose window can contain it.
    auto it = anchors_.upper_bound(now);
    if (it != anchors_.begin()) {
        --it;
        if (now - it->first <= window) return it->second;
    }
    const SessionId fresh{next_id_++};
    anchors_.emplace(now, fresh);
    return fresh;
}

MalformedVisitLog::MalformedVisitLog(std::size_t line, const std::string& what)
    : std::runtime_error("visit log line " + std::to_string(line) + ": " + what) {}

namespace {

std::int64_t parse_int(std::string_view s, std::size_t line, const char* field) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw MalformedVisitLog(line, std::string("bad ") + field + " '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

std::vector<VisitRecord> parse_visit_log(std::string_view text) {
    std::vector<VisitRecord> out;
    std::size_t number = 0;
    for (const auto line : text::split_lines(text)) {
        ++number;
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos) throw MalformedVisitLog(number, "expected three tab-separated fields");
        VisitRecord r;
        r.host = text::to_lower(text::trim(line.substr(0, t1)));
        if (r.host.empty()) throw MalformedVisitLog(number, "empty host");
        r.unix_time = parse_int(text::trim(line.substr(t1 + 1, t2 - t1 - 1)), number, "unix_time");
        r.session_id = parse_int(text::trim(line.substr(t2 + 1)), number, "session_id");
        if (!out.empty() && r.unix_time < out.back().unix_time) throw MalformedVisitLog(number, "time goes backwards");
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

std::int64_t first_free_id(const std::vector<VisitRecord>& visits) {
    std::int64_t max_id = 0;
    for (const auto& v : visits) max_id = std::max(max_id, v.session_id);
    return max_id + 1;
}

}  // namespace

VisitLogSessionResolver::VisitLogSessionResolver(std::vector<VisitRecord> visits, double window_secs)
    : fallback_(window_secs, first_free_id(visits)) {
    for (auto& v : visits) by_host_[v.host].push_back(std::move(v));
}

SessionId VisitLogSessionResolver::resolve(std::string_view url, Timestamp ts) {
    if (const auto it = by_host_.find(url_host(url)); it != by_host_.end()) {
        const auto& visits = it->second;
        // Visits are time-ordered; find the last one with unix_time <= ts.
        const auto after = std::upper_bound(visits.begin(), visits.end(), ts, [](const Timestamp& t, const VisitRecord& v) {
            return Timestamp{v.unix_time, 0} > t;
        });
        if (after != visits.begin()) return SessionId{std::prev(after)->session_id};
    }
    return fallback_.resolve(url, ts);
}

}  // namespace netprofile
