#include "netprofile/daemon.hpp"

#include <chrono>

namespace netprofile {

Timestamp system_clock_now() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(now).count();
    return {micros / 1'000'000, micros % 1'000'000};
}

std::optional<NetworkId> current_network_id(const DaemonState& state) {
    if (const auto* k = std::get_if<Known>(&state)) return k->id;
    if (const auto* p = std::get_if<PendingUnknown>(&state)) return p->id;
    return std::nullopt;
}

Daemon::Daemon(ProfileStore& store, ProcessLauncher& launcher, SessionResolver& sessions, EventLog& log,
               DaemonOptions options, Clock clock)
    : store_(store),
      launcher_(launcher),
      log_(log),
      options_(std::move(options)),
      clock_(std::move(clock)),
      engine_(options_.local_mac, sessions, options_.media_subtypes) {}

NotificationEvent Daemon::apply_and_announce(const NetworkId& id, const NetworkProfile& profile, std::vector<std::string> warnings) {
    ProfileAppliedPayload payload{id.str(), apply_profile(profile, options_.sandbox_root, launcher_, options_.backends), std::nullopt,
                                  std::move(warnings)};
    return log_.append(std::move(payload), clock_());
}

std::vector<NotificationEvent> Daemon::tick(const std::optional<NetworkId>& fingerprint) {
    if (!fingerprint) {
        state_ = Disconnected{};
        return {};
    }
    if (current_network_id(state_) == fingerprint) return {};

    std::vector<std::string> warnings;
    std::optional<NetworkProfile> profile;
    try {
        profile = store_.lookup(*fingerprint, &warnings);
    } catch (const std::exception& e) {
        // The file exists but cannot be used; wait for a replacement profile.
        state_ = PendingUnknown{*fingerprint};
        ProfileAppliedPayload payload{fingerprint->str(), {}, std::string(e.what()), {}};
        return {log_.append(std::move(payload), clock_())};
    }

    if (!profile) {
        state_ = PendingUnknown{*fingerprint};
        return {log_.append(UnknownNetworkPayload{fingerprint->str()}, clock_())};
    }
    state_ = Known{*fingerprint, *profile};
    return {apply_and_announce(*fingerprint, *profile, std::move(warnings))};
}

void Daemon::store_or_throw(const NetworkId& id, const NetworkProfile& profile) {
    try {
        validate_profile(profile);
    } catch (const InvalidProfile& e) {
        throw DaemonError(DaemonErrorCode::InvalidInput, e.what());
    }
    try {
        store_.store(id, profile);
    } catch (const std::exception& e) {
        throw DaemonError(DaemonErrorCode::Storage, e.what());
    }
}

std::vector<NotificationEvent> Daemon::submit_pending_profile(const NetworkId& id, const NetworkProfile& profile) {
    const auto* pending = std::get_if<PendingUnknown>(&state_);
    if (!pending) throw DaemonError(DaemonErrorCode::NotPending, "no network is waiting for a profile");
    if (pending->id != id) {
        throw DaemonError(DaemonErrorCode::WrongPendingId, "pending network is '" + pending->id.str() + "', not '" + id.str() + "'");
    }
    store_or_throw(id, profile);
    state_ = Known{id, profile};
    return {apply_and_announce(id, profile, {})};
}

std::vector<NotificationEvent> Daemon::upsert_profile(const NetworkId& id, const NetworkProfile& profile) {
    store_or_throw(id, profile);
    if (current_network_id(state_) != id) return {};
    state_ = Known{id, profile};
    return {apply_and_announce(id, profile, {})};
}

std::vector<NotificationEvent> Daemon::apply_stored(const NetworkId& id) {
    std::vector<std::string> warnings;
    std::optional<NetworkProfile> profile;
    try {
        profile = store_.lookup(id, &warnings);
    } catch (const std::exception& e) {
        throw DaemonError(DaemonErrorCode::Storage, e.what());
    }
    if (!profile) throw DaemonError(DaemonErrorCode::NotFound, "no profile for '" + id.str() + "'");
    return {apply_and_announce(id, *profile, std::move(warnings))};
}

NotificationEvent Daemon::on_detector_event(const SafeSiteEvent& ev) {
    return log_.append(SafeSitePayload{ev.url}, ev.ts);
}

NotificationEvent Daemon::on_detector_event(const MediaStreamEvent& ev) {
    return log_.append(MediaStreamPayload{ev.content_type, ev.dst_port, ev.content_length}, ev.ts);
}

bool Daemon::current_is_home() const {
    const auto* known = std::get_if<Known>(&state_);
    return known && known->profile.is_home;
}

bool Daemon::process_frame(const RawFrame& frame, std::optional<bool> is_home, std::vector<NotificationEvent>& out) {
    DecodedPacket pkt;
    try {
        pkt = decode_frame(frame.bytes, frame.ts);
    } catch (const FrameDecodeError&) {
        return false;
    }
    const auto result = engine_.process(pkt, is_home.value_or(current_is_home()));
    if (result.safe_site) out.push_back(on_detector_event(*result.safe_site));
    if (result.media) out.push_back(on_detector_event(*result.media));
    return true;
}

ReplayResult Daemon::replay(const std::vector<RawFrame>& frames, std::optional<bool> is_home, std::optional<MacAddress> local_mac) {
    const MacAddress saved = engine_.local_mac();
    if (local_mac) engine_.set_local_mac(*local_mac);
    ReplayResult result;
    for (const auto& frame : frames) {
        ++result.frames;
        if (!process_frame(frame, is_home, result.events)) ++result.undecodable;
    }
    engine_.set_local_mac(saved);
    return result;
}

}  // namespace netprofile
