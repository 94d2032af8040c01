#pragma once

#include <json.hpp>

#include "netprofile/daemon.hpp"
#include "netprofile/events.hpp"
#include "netprofile/modifiers.hpp"
#include "netprofile/profile.hpp"

namespace netprofile {

using Json = nlohmann::ordered_json;

Json to_json(const NetworkProfile& profile);

/// Missing fields keep their defaults. Throws InvalidProfile on wrong types
/// or invalid MIME keys.
NetworkProfile profile_from_json(const Json& doc);

Json to_json(const ChangeReport& report);
Json to_json(const NotificationEvent& event);

/// {state, network_id, is_home}
Json status_json(const DaemonState& state);

/// One compact JSON document per line.
std::string to_json_lines(const std::vector<NotificationEvent>& events);

}  // namespace netprofile
