#pragma once

#include <atomic>
#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "netprofile/config.hpp"
#include "netprofile/daemon.hpp"
#include "netprofile/events.hpp"
#include "netprofile/fingerprint.hpp"

namespace netprofile {

struct ProbeResult {
    std::optional<NetworkId> id;
    std::optional<MacAddress> hw_addr;
    std::string interface_name;
    std::optional<std::string> error;
};

/// Fingerprint of the first usable interface in an interface report.
ProbeResult probe_from_reports(std::string_view interface_report, std::string_view resolver_config);

/// Adds an `IEEE 802.11` marker to every interface block that iwconfig
/// reports with an ESSID, so the report parser sees it as wireless.
std::string merge_wireless_report(std::string_view ifconfig_report, std::string_view iwconfig_report);

class NetworkProbe {
public:
    virtual ~NetworkProbe() = default;
    virtual ProbeResult probe() = 0;
};

/// Re-reads a captured interface report and resolver file on every probe.
class FileProbe final : public NetworkProbe {
public:
    FileProbe(std::filesystem::path interface_report, std::filesystem::path resolver_config);
    ProbeResult probe() override;

private:
    std::filesystem::path interface_report_;
    std::filesystem::path resolver_config_;
};

/// Runs `ifconfig -a` and `iwconfig` on every probe.
class CommandProbe final : public NetworkProbe {
public:
    explicit CommandProbe(std::filesystem::path resolver_config);
    ProbeResult probe() override;

private:
    std::filesystem::path resolver_config_;
};

/// Serialized access to a Daemon. Exceptions thrown by `fn` reach the caller.
class DaemonAccess {
public:
    virtual ~DaemonAccess() = default;
    virtual void run(const std::function<void(Daemon&)>& fn) = 0;
    virtual const EventLog& events() const = 0;
};

/// Runs commands on the caller's thread under a mutex.
class InlineDaemonAccess final : public DaemonAccess {
public:
    InlineDaemonAccess(Daemon& daemon, const EventLog& log) : daemon_(daemon), log_(log) {}
    void run(const std::function<void(Daemon&)>& fn) override;
    const EventLog& events() const override { return log_; }

private:
    Daemon& daemon_;
    const EventLog& log_;
    std::mutex mu_;
};

/// Owns the daemon and its single command loop. The loop ticks with a fresh
/// probe every poll interval and executes queued commands in between; a
/// live-capture thread, when configured, queues frames as commands.
class DaemonService final : public DaemonAccess {
public:
    DaemonService(DaemonConfig config, std::unique_ptr<NetworkProbe> probe, std::unique_ptr<ProcessLauncher> launcher = nullptr);
    ~DaemonService() override;
    DaemonService(const DaemonService&) = delete;
    DaemonService& operator=(const DaemonService&) = delete;

    void start();
    void stop();

    void run(const std::function<void(Daemon&)>& fn) override;
    const EventLog& events() const override { return log_; }

    /// Queues without waiting.
    void post(std::function<void(Daemon&)> fn);

    [[nodiscard]] const DaemonConfig& config() const { return config_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

private:
    void loop();
    void capture_loop();
    void probe_and_tick();

    DaemonConfig config_;
    std::vector<std::string> warnings_;
    std::unique_ptr<NetworkProbe> probe_;
    std::unique_ptr<ProcessLauncher> launcher_;
    std::unique_ptr<SessionResolver> sessions_;
    ProfileRepository repo_;
    ProfileStore store_;
    EventLog log_;
    Daemon daemon_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::function<void(Daemon&)>> queue_;
    std::atomic<bool> stopping_{false};
    std::thread loop_thread_;
    std::thread capture_thread_;
};

}  // namespace netprofile
