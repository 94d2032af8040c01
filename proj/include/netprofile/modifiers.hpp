#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netprofile/profile.hpp"

namespace netprofile {

enum class ModifierErrorCode {
    MissingProfilesIni,
    MissingPathKey,
    IoFailure,
    AccountNotFound,
    MalformedXml,
    LaunchFailure,
};

std::string_view to_string(ModifierErrorCode code);

class ModifierError : public std::runtime_error {
public:
    ModifierError(ModifierErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ModifierErrorCode code() const { return code_; }

private:
    ModifierErrorCode code_;
};

struct FileEdit {
    std::string path;  // relative to the sandbox root
    std::string description;

    friend bool operator==(const FileEdit&, const FileEdit&) = default;
};

struct ReportError {
    ModifierErrorCode code;
    std::string message;

    friend bool operator==(const ReportError&, const ReportError&) = default;
};

/// Outcome of one backend. `changed` means configuration files were
/// rewritten; a launch is reported through `launched` alone.
struct ChangeReport {
    std::string modifier_name;
    bool changed = false;
    std::vector<FileEdit> details;
    std::optional<std::string> launched;
    std::optional<ReportError> error;

    friend bool operator==(const ChangeReport&, const ChangeReport&) = default;
};

class ProcessLauncher {
public:
    virtual ~ProcessLauncher() = default;
    /// Throws ModifierError(LaunchFailure).
    virtual void launch(const std::string& command_line) = 0;
};

/// Records command lines instead of running them.
class RecordingLauncher final : public ProcessLauncher {
public:
    explicit RecordingLauncher(bool fail = false) : fail_(fail) {}
    void launch(const std::string& command_line) override;

    std::vector<std::string> launched;
    std::size_t attempts = 0;

private:
    bool fail_;
};

/// Runs the command through `/bin/sh -c` without waiting for it.
class ShellLauncher final : public ProcessLauncher {
public:
    void launch(const std::string& command_line) override;
};

struct BackendSet {
    bool browser = true;
    bool media = true;
    bool messenger = true;
    bool email = true;
};

/// Runs the enabled backends in order browser, media, messenger, email. Each
/// failure lands in that backend's report; later backends still run. Empty
/// profile fields produce an unchanged report for their backend.
std::vector<ChangeReport> apply_profile(const NetworkProfile& profile,
                                        const std::filesystem::path& sandbox_root,
                                        ProcessLauncher& launcher,
                                        const BackendSet& enabled = {});

/// Sets `browser.startup.homepage` in the first Firefox profile listed in
/// `.mozilla/firefox/profiles.ini`. Throws ModifierError.
ChangeReport browser_homepage_apply(std::string_view url, const std::filesystem::path& sandbox_root);

/// Rewrites `<mime>=<app>.desktop` lines under `[Default Applications]` in
/// `.local/share/applications/mimeapps.list`. Throws ModifierError.
ChangeReport default_media_apply(const std::map<std::string, std::string>& default_media,
                                 const std::filesystem::path& sandbox_root);

/// Makes `account` the only Available, auto-login account in
/// `.purple/accounts.xml`. Throws ModifierError.
ChangeReport messenger_apply(std::string_view account, const std::filesystem::path& sandbox_root);

/// Launches `command` once; empty command is a no-op. Throws ModifierError.
ChangeReport email_apply(std::string_view command, ProcessLauncher& launcher);

}  // namespace netprofile
