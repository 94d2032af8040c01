#include "netprofile/json_codec.hpp"

namespace netprofile {

Json to_json(const NetworkProfile& p) {
    Json media = Json::object();
    for (const auto& [mime, app] : p.default_media) media[mime] = app;
    return Json{{"display_name", p.display_name},   {"homepage_url", p.homepage_url},   {"default_media", media},
                {"messenger_account", p.messenger_account}, {"email_command", p.email_command}, {"is_home", p.is_home}};
}

namespace {

void read_string(const Json& doc, const char* key, std::string& out) {
    if (!doc.contains(key) || doc[key].is_null()) return;
    if (!doc[key].is_string()) throw InvalidProfile(std::string(key) + " must be a string");
    out = doc[key].get<std::string>();
}

}  // namespace

NetworkProfile profile_from_json(const Json& doc) {
    if (!doc.is_object()) throw InvalidProfile("profile must be a JSON object");
    NetworkProfile p;
    read_string(doc, "display_name", p.display_name);
    read_string(doc, "homepage_url", p.homepage_url);
    read_string(doc, "messenger_account", p.messenger_account);
    read_string(doc, "email_command", p.email_command);
    if (doc.contains("is_home") && !doc["is_home"].is_null()) {
        if (!doc["is_home"].is_boolean()) throw InvalidProfile("is_home must be a boolean");
        p.is_home = doc["is_home"].get<bool>();
    }
    if (doc.contains("default_media") && !doc["default_media"].is_null()) {
        const auto& media = doc["default_media"];
        if (!media.is_object()) throw InvalidProfile("default_media must be an object");
        for (const auto& [mime, app] : media.items()) {
            if (!app.is_string()) throw InvalidProfile("default_media." + mime + " must be a string");
            p.default_media[mime] = app.get<std::string>();
        }
    }
    validate_profile(p);
    return p;
}

Json to_json(const ChangeReport& r) {
    Json details = Json::array();
    for (const auto& d : r.details) details.push_back({{"path", d.path}, {"description", d.description}});
    Json out{{"modifier_name", r.modifier_name}, {"changed", r.changed}, {"details", details}};
    out["launched"] = r.launched ? Json(*r.launched) : Json(nullptr);
    out["error"] = r.error ? Json{{"code", std::string(to_string(r.error->code))}, {"message", r.error->message}} : Json(nullptr);
    return out;
}

Json to_json(const NotificationEvent& ev) {
    Json payload = std::visit(
        [](const auto& p) -> Json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, UnknownNetworkPayload>) {
                return {{"network_id", p.network_id}};
            } else if constexpr (std::is_same_v<T, ProfileAppliedPayload>) {
                Json reports = Json::array();
                for (const auto& r : p.reports) reports.push_back(to_json(r));
                Json out{{"network_id", p.network_id}, {"reports", reports}};
                out["error"] = p.error ? Json(*p.error) : Json(nullptr);
                out["warnings"] = p.warnings;
                return out;
            } else if constexpr (std::is_same_v<T, SafeSitePayload>) {
                return {{"url", p.url}};
            } else {
                return {{"content_type", p.content_type}, {"dst_port", p.dst_port}, {"content_length", p.content_length}};
            }
        },
        ev.payload);
    return Json{{"seq", ev.seq},
                {"kind", std::string(to_string(ev.kind))},
                {"ts", {{"sec", ev.ts.sec}, {"usec", ev.ts.usec}}},
                {"payload", payload}};
}

Json status_json(const DaemonState& state) {
    if (const auto* k = std::get_if<Known>(&state)) {
        return {{"state", "known"}, {"network_id", k->id.str()}, {"is_home", k->profile.is_home}};
    }
    if (const auto* p = std::get_if<PendingUnknown>(&state)) {
        return {{"state", "pending"}, {"network_id", p->id.str()}, {"is_home", false}};
    }
    return {{"state", "disconnected"}, {"network_id", nullptr}, {"is_home", false}};
}

std::string to_json_lines(const std::vector<NotificationEvent>& events) {
    std::string out;
    for (const auto& ev : events) {
        out += to_json(ev).dump();
        out += '\n';
    }
    return out;
}

}  // namespace netprofile
