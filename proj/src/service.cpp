#include "netprofile/service.hpp"

#include <spdlog/spdlog.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <map>

#include "netprofile/capture.hpp"
#include "netprofile/fs_util.hpp"
#include "netprofile/text.hpp"

namespace netprofile {

namespace fs = std::filesystem;

ProbeResult probe_from_reports(std::string_view interface_report, std::string_view resolver_config) {
    ProbeResult result;
    try {
        const auto active = select_active_interface(parse_interface_report(interface_report));
        if (!active) return result;
        result.interface_name = active->name;
        result.hw_addr = active->hw_addr;
        result.id = derive_network_id(*active, parse_resolver_config(resolver_config));
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    return result;
}

std::string merge_wireless_report(std::string_view ifconfig_report, std::string_view iwconfig_report) {
    std::map<std::string, bool, std::less<>> wireless;
    for (const auto line : text::split_lines(iwconfig_report)) {
        if (line.empty() || line.front() == ' ' || line.front() == '\t') continue;
        const auto tokens = text::split_ws(line);
        if (tokens.size() > 1 && line.find("ESSID:") != std::string_view::npos) wireless[std::string(tokens.front())] = true;
    }

    std::string out;
    std::string current;
    const auto close_block = [&] {
        if (!current.empty() && wireless.contains(current)) out += "          IEEE 802.11\n";
        current.clear();
    };
    for (const auto line : text::split_lines(ifconfig_report)) {
        if (text::trim(line).empty()) {
            close_block();
        } else if (line.front() != ' ' && line.front() != '\t') {
            close_block();
            current = std::string(text::split_ws(line).front());
        }
        out += line;
        out += '\n';
    }
    close_block();
    return out;
}

FileProbe::FileProbe(fs::path interface_report, fs::path resolver_config)
    : interface_report_(std::move(interface_report)), resolver_config_(std::move(resolver_config)) {}

ProbeResult FileProbe::probe() {
    try {
        const auto report = read_file(interface_report_).value_or("");
        const auto resolver = read_file(resolver_config_).value_or("");
        return probe_from_reports(report, resolver);
    } catch (const std::exception& e) {
        return {.error = e.what()};
    }
}

namespace {

std::string run_command(const char* command) {
    std::string out;
    FILE* pipe = ::popen(command, "r");
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    ::pclose(pipe);
    return out;
}

}  // namespace

CommandProbe::CommandProbe(fs::path resolver_config) : resolver_config_(std::move(resolver_config)) {}

ProbeResult CommandProbe::probe() {
    const auto report = merge_wireless_report(run_command("ifconfig -a 2>/dev/null"), run_command("iwconfig 2>/dev/null"));
    try {
        return probe_from_reports(report, read_file(resolver_config_).value_or(""));
    } catch (const std::exception& e) {
        return {.error = e.what()};
    }
}

void InlineDaemonAccess::run(const std::function<void(Daemon&)>& fn) {
    std::lock_guard lock(mu_);
    fn(daemon_);
}

namespace {

std::unique_ptr<SessionResolver> make_resolver(const DaemonConfig& config, std::vector<std::string>& warnings) {
    if (config.visit_log) {
        try {
            if (const auto text = read_file(*config.visit_log)) {
                return std::make_unique<VisitLogSessionResolver>(parse_visit_log(*text), config.session_window_secs);
            }
            warnings.push_back("visit log " + config.visit_log->string() + " not found; using time windows");
        } catch (const std::exception& e) {
            warnings.push_back(std::string("visit log ignored: ") + e.what());
        }
    }
    return std::make_unique<WindowSessionResolver>(config.session_window_secs);
}

std::unique_ptr<ProcessLauncher> make_launcher(const DaemonConfig& config, std::unique_ptr<ProcessLauncher> given) {
    if (given) return given;
    if (config.launch_commands) return std::make_unique<ShellLauncher>();
    return std::make_unique<RecordingLauncher>();
}

DaemonOptions make_options(const DaemonConfig& config) {
    DaemonOptions options;
    options.sandbox_root = config.sandbox_root;
    options.media_subtypes = config.media_subtypes;
    if (config.local_mac) options.local_mac = *config.local_mac;
    return options;
}

}  // namespace

DaemonService::DaemonService(DaemonConfig config, std::unique_ptr<NetworkProbe> probe, std::unique_ptr<ProcessLauncher> launcher)
    : config_(std::move(config)),
      probe_(std::move(probe)),
      launcher_(make_launcher(config_, std::move(launcher))),
      sessions_(make_resolver(config_, warnings_)),
      repo_(config_.home_root),
      store_(repo_, config_.cache_capacity),
      daemon_(store_, *launcher_, *sessions_, log_, make_options(config_)) {}

DaemonService::~DaemonService() { stop(); }

void DaemonService::start() {
    if (loop_thread_.joinable()) return;
    stopping_ = false;
    loop_thread_ = std::thread([this] { loop(); });
    if (!config_.capture_interface.empty()) capture_thread_ = std::thread([this] { capture_loop(); });
}

void DaemonService::stop() {
    stopping_ = true;
    cv_.notify_all();
    if (loop_thread_.joinable()) loop_thread_.join();
    if (capture_thread_.joinable()) capture_thread_.join();
}

void DaemonService::post(std::function<void(Daemon&)> fn) {
    {
        std::lock_guard lock(mu_);
        queue_.push_back(std::move(fn));
    }
    cv_.notify_all();
}

void DaemonService::run(const std::function<void(Daemon&)>& fn) {
    if (!loop_thread_.joinable() || std::this_thread::get_id() == loop_thread_.get_id()) {
        std::lock_guard lock(mu_);
        fn(daemon_);
        return;
    }
    auto task = std::make_shared<std::packaged_task<void(Daemon&)>>(fn);
    auto done = task->get_future();
    post([task](Daemon& d) { (*task)(d); });
    done.get();
}

void DaemonService::probe_and_tick() {
    const ProbeResult result = probe_ ? probe_->probe() : ProbeResult{};
    if (result.error) spdlog::warn("network probe failed: {}", *result.error);
    if (result.hw_addr && !config_.local_mac) daemon_.set_local_mac(*result.hw_addr);
    for (const auto& ev : daemon_.tick(result.id)) {
        spdlog::info("event {} {}", ev.seq, to_string(ev.kind));
    }
}

void DaemonService::loop() {
    using namespace std::chrono;
    const auto interval = duration_cast<steady_clock::duration>(duration<double>(config_.poll_interval_secs));
    auto next_tick = steady_clock::now();

    while (!stopping_) {
        std::deque<std::function<void(Daemon&)>> batch;
        {
            std::unique_lock lock(mu_);
            cv_.wait_until(lock, next_tick, [&] { return stopping_ || !queue_.empty(); });
            batch.swap(queue_);
        }
        for (auto& command : batch) {
            try {
                command(daemon_);
            } catch (const std::exception& e) {
                spdlog::error("command failed: {}", e.what());
            }
        }
        if (!stopping_ && steady_clock::now() >= next_tick) {
            try {
                probe_and_tick();
            } catch (const std::exception& e) {
                spdlog::error("tick failed: {}", e.what());
            }
            next_tick = steady_clock::now() + interval;
        }
    }
}

void DaemonService::capture_loop() {
    try {
        LiveCapture capture(config_.capture_interface);
        spdlog::info("capturing on {}", config_.capture_interface);
        while (!stopping_) {
            auto frame = capture.next_frame();
            if (!frame) break;
            if (frame->bytes.empty()) continue;
            post([f = std::move(*frame)](Daemon& d) {
                std::vector<NotificationEvent> events;
                d.process_frame(f, std::nullopt, events);
            });
        }
    } catch (const std::exception& e) {
        spdlog::error("live capture stopped: {}", e.what());
    }
}

}  // namespace netprofile
