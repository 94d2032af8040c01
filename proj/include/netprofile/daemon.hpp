#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "netprofile/capture.hpp"
#include "netprofile/detectors.hpp"
#include "netprofile/events.hpp"
#include "netprofile/modifiers.hpp"
#include "netprofile/network_id.hpp"
#include "netprofile/profile.hpp"
#include "netprofile/repository.hpp"
#include "netprofile/session.hpp"

namespace netprofile {

struct Disconnected {
    friend bool operator==(const Disconnected&, const Disconnected&) = default;
};

struct Known {
    NetworkId id;
    NetworkProfile profile;
    friend bool operator==(const Known&, const Known&) = default;
};

struct PendingUnknown {
    NetworkId id;
    friend bool operator==(const PendingUnknown&, const PendingUnknown&) = default;
};

using DaemonState = std::variant<Disconnected, Known, PendingUnknown>;

enum class DaemonErrorCode { WrongPendingId, NotPending, NotFound, InvalidInput, Storage };

class DaemonError : public std::runtime_error {
public:
    DaemonError(DaemonErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] DaemonErrorCode code() const { return code_; }

private:
    DaemonErrorCode code_;
};

using Clock = std::function<Timestamp()>;

Timestamp system_clock_now();

struct DaemonOptions {
    std::filesystem::path sandbox_root;
    BackendSet backends;
    std::set<std::string> media_subtypes = default_media_subtypes();
    MacAddress local_mac;
};

struct ReplayResult {
    std::size_t frames = 0;
    std::size_t undecodable = 0;
    std::vector<NotificationEvent> events;
};

/// The network-change loop body plus the packet detectors. Not thread-safe:
/// every call comes from the one thread that owns the daemon.
class Daemon {
public:
    Daemon(ProfileStore& store, ProcessLauncher& launcher, SessionResolver& sessions, EventLog& log, DaemonOptions options,
           Clock clock = system_clock_now);

    [[nodiscard]] const DaemonState& state() const { return state_; }

    /// Unchanged id: nothing. Known id: apply its profile. Unknown id: wait
    /// for a profile and announce it. nullopt: Disconnected, silently.
    std::vector<NotificationEvent> tick(const std::optional<NetworkId>& fingerprint);

    /// Stores and applies the profile for the network currently pending.
    /// Throws DaemonError (WrongPendingId, NotPending, InvalidInput, Storage).
    std::vector<NotificationEvent> submit_pending_profile(const NetworkId& id, const NetworkProfile& profile);

    /// Stores `profile`. When `id` is the current or pending network the
    /// profile is applied at once. Throws DaemonError (InvalidInput, Storage).
    std::vector<NotificationEvent> upsert_profile(const NetworkId& id, const NetworkProfile& profile);

    /// Runs the modifiers for a stored profile without changing state.
    /// Throws DaemonError (NotFound, Storage).
    std::vector<NotificationEvent> apply_stored(const NetworkId& id);

    NotificationEvent on_detector_event(const SafeSiteEvent& ev);
    NotificationEvent on_detector_event(const MediaStreamEvent& ev);

    /// Decodes one frame and feeds the detectors. `is_home` overrides the
    /// current profile's flag. Undecodable frames are ignored (returns false).
    bool process_frame(const RawFrame& frame, std::optional<bool> is_home, std::vector<NotificationEvent>& out);

    ReplayResult replay(const std::vector<RawFrame>& frames, std::optional<bool> is_home,
                        std::optional<MacAddress> local_mac = std::nullopt);

    /// Media detection runs unless the current network is flagged home.
    [[nodiscard]] bool current_is_home() const;

    void set_local_mac(const MacAddress& mac) { engine_.set_local_mac(mac); }
    [[nodiscard]] const MacAddress& local_mac() const { return engine_.local_mac(); }

    ProfileStore& store() { return store_; }
    EventLog& log() { return log_; }

private:
    NotificationEvent apply_and_announce(const NetworkId& id, const NetworkProfile& profile, std::vector<std::string> warnings);
    void store_or_throw(const NetworkId& id, const NetworkProfile& profile);

    ProfileStore& store_;
    ProcessLauncher& launcher_;
    EventLog& log_;
    DaemonOptions options_;
    Clock clock_;
    PacketEngine engine_;
    DaemonState state_ = Disconnected{};
};

std::optional<NetworkId> current_network_id(const DaemonState& state);

}  // namespace netprofile
