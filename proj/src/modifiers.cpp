#include "netprofile/modifiers.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "netprofile/fs_util.hpp"
#include "netprofile/text.hpp"
#include "netprofile/xml_edit.hpp"

extern char** environ;

namespace netprofile {

namespace fs = std::filesystem;

std::string_view to_string(ModifierErrorCode code) {
    switch (code) {
        case ModifierErrorCode::MissingProfilesIni: return "MissingProfilesIni";
        case ModifierErrorCode::MissingPathKey: return "MissingPathKey";
        case ModifierErrorCode::IoFailure: return "IoFailure";
        case ModifierErrorCode::AccountNotFound: return "AccountNotFound";
        case ModifierErrorCode::MalformedXml: return "MalformedXml";
        case ModifierErrorCode::LaunchFailure: return "LaunchFailure";
    }
    return "Unknown";
}

void RecordingLauncher::launch(const std::string& command_line) {
    ++attempts;
    if (fail_) throw ModifierError(ModifierErrorCode::LaunchFailure, "cannot launch '" + command_line + "'");
    launched.push_back(command_line);
}

void ShellLauncher::launch(const std::string& command_line) {
    // Double fork detaches the program so the daemon never has to reap it.
    const pid_t child = ::fork();
    if (child < 0) throw ModifierError(ModifierErrorCode::LaunchFailure, std::string("fork: ") + std::strerror(errno));
    if (child == 0) {
        ::setsid();
        pid_t grandchild = 0;
        const char* argv[] = {"/bin/sh", "-c", command_line.c_str(), nullptr};
        const int rc = ::posix_spawn(&grandchild, "/bin/sh", nullptr, nullptr, const_cast<char**>(argv), environ);
        ::_exit(rc == 0 ? 0 : 127);
    }
    int status = 0;
    while (::waitpid(child, &status, 0) < 0 && errno == EINTR) {
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        throw ModifierError(ModifierErrorCode::LaunchFailure, "cannot spawn '" + command_line + "'");
    }
}

namespace {

/// File split into lines. Line text excludes '\n' but keeps any '\r'.
struct LineFile {
    std::vector<std::string> lines;
    bool trailing_newline = true;

    static LineFile from(std::string_view content) {
        LineFile f;
        if (content.empty()) return f;
        f.trailing_newline = content.back() == '\n';
        if (f.trailing_newline) content.remove_suffix(1);
        std::size_t start = 0;
        for (;;) {
            const auto nl = content.find('\n', start);
            f.lines.emplace_back(content.substr(start, nl - start));
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        return f;
    }

    [[nodiscard]] std::string join() const {
        std::string out;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            out += lines[i];
            if (i + 1 < lines.size() || trailing_newline) out += '\n';
        }
        return out;
    }
};

// Messages name paths relative to the sandbox so reports do not depend on where it lives.
std::string relative_to(const fs::path& path, const fs::path& root) {
    const auto rel = path.lexically_relative(root);
    return (rel.empty() || rel.native().starts_with("..")) ? path.generic_string() : rel.generic_string();
}

std::optional<std::string> read_optional(const fs::path& path, const fs::path& root) {
    try {
        return read_file(path);
    } catch (const IoFailure&) {
        throw ModifierError(ModifierErrorCode::IoFailure, "cannot read " + relative_to(path, root));
    }
}

std::string read_required(const fs::path& path, const fs::path& root) {
    auto content = read_optional(path, root);
    if (!content) throw ModifierError(ModifierErrorCode::IoFailure, "missing " + relative_to(path, root));
    return std::move(*content);
}

void write_or_throw(const fs::path& path, const fs::path& root, std::string_view content) {
    try {
        write_file_atomic(path, content);
    } catch (const IoFailure&) {
        throw ModifierError(ModifierErrorCode::IoFailure, "cannot write " + relative_to(path, root));
    }
}

// ---- browser ----

constexpr std::string_view kHomepageKey = "user_pref(\"browser.startup.homepage\",";

fs::path firefox_profile_dir(const fs::path& root) {
    const fs::path firefox = root / ".mozilla" / "firefox";
    const fs::path ini_path = firefox / "profiles.ini";
    std::optional<std::string> ini;
    try {
        ini = read_file(ini_path);
    } catch (const IoFailure&) {
        ini.reset();
    }
    if (!ini) throw ModifierError(ModifierErrorCode::MissingProfilesIni, "missing " + relative_to(ini_path, root));

    bool in_profile = false;
    bool seen_profile = false;
    std::optional<std::string> path;
    bool relative = true;
    for (const auto raw : text::split_lines(*ini)) {
        const auto line = text::trim(raw);
        if (line.starts_with('[')) {
            if (seen_profile) break;
            in_profile = line.starts_with("[Profile");
            seen_profile = in_profile;
            continue;
        }
        if (!in_profile) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = text::trim(line.substr(0, eq));
        const auto value = text::trim(line.substr(eq + 1));
        if (key == "Path") path = std::string(value);
        if (key == "IsRelative") relative = value != "0";
    }
    if (!path || path->empty()) {
        throw ModifierError(ModifierErrorCode::MissingPathKey, "no Path= in the first profile section of profiles.ini");
    }
    return relative ? firefox / *path : fs::path(*path);
}

std::string js_escape(std::string_view s) {
    std::string out;
    for (const char c : s) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
    }
    return out;
}

/// Span of the string literal's contents following the key, if the line has one.
std::optional<std::pair<std::size_t, std::size_t>> homepage_literal(std::string_view line, std::size_t key_pos) {
    std::size_t i = key_pos + kHomepageKey.size();
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] != '"') return std::nullopt;
    const std::size_t begin = ++i;
    for (; i < line.size(); ++i) {
        if (line[i] == '\\') {
            ++i;
        } else if (line[i] == '"') {
            return std::pair{begin, i};
        }
    }
    return std::nullopt;
}

// ---- media ----

constexpr std::string_view kDefaultSection = "[Default Applications]";

std::string desktop_entry(std::string_view app) {
    std::string out(app);
    if (!out.ends_with(".desktop")) out += ".desktop";
    return out;
}

}  // namespace

ChangeReport browser_homepage_apply(std::string_view url, const fs::path& sandbox_root) {
    ChangeReport report{.modifier_name = "browser"};
    const fs::path prefs_path = firefox_profile_dir(sandbox_root) / "prefs.js";
    const std::string rel = relative_to(prefs_path, sandbox_root);

    const std::string original = read_optional(prefs_path, sandbox_root).value_or("");

    LineFile file = LineFile::from(original);
    const std::string escaped = js_escape(url);
    bool found = false;
    for (auto& line : file.lines) {
        const auto pos = line.find(kHomepageKey);
        if (pos == std::string::npos) continue;
        found = true;
        if (const auto literal = homepage_literal(line, pos)) {
            if (std::string_view(line).substr(literal->first, literal->second - literal->first) == escaped) continue;
            line.replace(literal->first, literal->second - literal->first, escaped);
        } else {
            const bool cr = line.ends_with('\r');
            line = line.substr(0, pos) + std::string(kHomepageKey) + " \"" + escaped + "\");" + (cr ? "\r" : "");
        }
        report.details.push_back({rel, "set browser.startup.homepage to " + std::string(url)});
    }
    if (!found) {
        if (!file.trailing_newline) file.trailing_newline = true;
        file.lines.push_back(std::string(kHomepageKey) + " \"" + escaped + "\");");
        report.details.push_back({rel, "added browser.startup.homepage = " + std::string(url)});
    }

    if (report.details.empty()) return report;
    const std::string updated = file.join();
    if (updated == original) {
        report.details.clear();
        return report;
    }
    std::error_code ec;
    if (!fs::is_directory(prefs_path.parent_path(), ec)) {
        throw ModifierError(ModifierErrorCode::IoFailure, "missing profile directory " + relative_to(prefs_path.parent_path(), sandbox_root));
    }
    write_or_throw(prefs_path, sandbox_root, updated);
    report.changed = true;
    return report;
}

ChangeReport default_media_apply(const std::map<std::string, std::string>& default_media, const fs::path& sandbox_root) {
    ChangeReport report{.modifier_name = "media"};
    if (default_media.empty()) return report;

    const fs::path list_path = sandbox_root / ".local" / "share" / "applications" / "mimeapps.list";
    const std::string rel = relative_to(list_path, sandbox_root);
    const std::string original = read_optional(list_path, sandbox_root).value_or("");
    LineFile file = LineFile::from(original);

    std::map<std::string, bool> seen;
    std::optional<std::size_t> section_last;  // last non-blank line of the default section
    bool in_default = false;

    for (std::size_t i = 0; i < file.lines.size(); ++i) {
        std::string& line = file.lines[i];
        const auto trimmed = text::trim(line);
        if (trimmed.starts_with('[')) {
            in_default = trimmed == kDefaultSection;
            if (in_default) section_last = i;
            continue;
        }
        if (!in_default) continue;
        if (!trimmed.empty()) section_last = i;

        const auto eq = trimmed.find('=');
        if (eq == std::string_view::npos) continue;
        const std::string mime(text::trim(trimmed.substr(0, eq)));
        const auto it = default_media.find(mime);
        if (it == default_media.end()) continue;
        seen[mime] = true;

        const std::string wanted = desktop_entry(it->second);
        const std::string value(text::trim(trimmed.substr(eq + 1)));
        if (value == wanted || value == wanted + ";") continue;
        const bool cr = line.ends_with('\r');
        line = mime + "=" + wanted + (cr ? "\r" : "");
        report.details.push_back({rel, mime + " -> " + wanted + " (was " + value + ")"});
    }

    std::vector<std::string> additions;
    for (const auto& [mime, app] : default_media) {
        if (seen.contains(mime)) continue;
        additions.push_back(mime + "=" + desktop_entry(app));
        report.details.push_back({rel, "added " + additions.back()});
    }
    if (!additions.empty()) {
        file.trailing_newline = true;
        if (!section_last) {
            file.lines.emplace_back(kDefaultSection);
            section_last = file.lines.size() - 1;
        }
        file.lines.insert(file.lines.begin() + static_cast<std::ptrdiff_t>(*section_last + 1), additions.begin(), additions.end());
    }

    if (report.details.empty()) return report;
    std::error_code ec;
    fs::create_directories(list_path.parent_path(), ec);
    if (ec) throw ModifierError(ModifierErrorCode::IoFailure, "cannot create " + relative_to(list_path.parent_path(), sandbox_root));
    write_or_throw(list_path, sandbox_root, file.join());
    report.changed = true;
    return report;
}

ChangeReport messenger_apply(std::string_view account, const fs::path& sandbox_root) {
    ChangeReport report{.modifier_name = "messenger"};
    if (account.empty()) throw std::invalid_argument("messenger account must be nonempty");

    const fs::path xml_path = sandbox_root / ".purple" / "accounts.xml";
    const std::string rel = relative_to(xml_path, sandbox_root);
    xml::Document doc;
    try {
        doc = xml::Document::parse(read_required(xml_path, sandbox_root));
    } catch (const xml::MalformedXml& e) {
        throw ModifierError(ModifierErrorCode::MalformedXml, rel + ": " + e.what());
    }

    const auto accounts = doc.children_named(doc.root_index(), "account");
    std::optional<std::size_t> target;
    for (const auto acc : accounts) {
        const auto names = doc.children_named(acc, "name");
        if (!names.empty() && text::trim(doc.text_content(names.front())) == account) {
            target = acc;
            break;
        }
    }
    if (!target) throw ModifierError(ModifierErrorCode::AccountNotFound, "no account named '" + std::string(account) + "' in " + rel);

    xml::Editor editor(doc);
    for (const auto acc : accounts) {
        const bool activate = acc == *target;
        const auto names = doc.children_named(acc, "name");
        const std::string label = names.empty() ? std::string("(unnamed)") : std::string(text::trim(doc.text_content(names.front())));

        for (const auto statuses : doc.children_named(acc, "statuses")) {
            for (const auto status : doc.children_named(statuses, "status")) {
                const auto* type = doc.elements()[status].attribute("type");
                if (!type || type->value != "available") continue;
                const auto* active = doc.elements()[status].attribute("active");
                const std::string wanted = activate ? "true" : "false";
                if (active && active->value == wanted) continue;
                editor.set_attribute(status, "active", wanted);
                report.details.push_back({rel, label + ": available status active=" + wanted});
            }
        }
        for (const auto setting : doc.descendants_named(acc, "setting")) {
            const auto* name = doc.elements()[setting].attribute("name");
            if (!name || name->value != "auto-login" || !doc.elements()[setting].children.empty()) continue;
            const std::string wanted = activate ? "1" : "0";
            if (text::trim(doc.text_content(setting)) == wanted) continue;
            editor.set_text(setting, wanted);
            report.details.push_back({rel, label + ": auto-login=" + wanted});
        }
    }

    if (editor.empty()) return report;
    write_or_throw(xml_path, sandbox_root, editor.apply());
    report.changed = true;
    return report;
}

ChangeReport email_apply(std::string_view command, ProcessLauncher& launcher) {
    ChangeReport report{.modifier_name = "email"};
    if (command.empty()) return report;
    launcher.launch(std::string(command));
    report.launched = std::string(command);
    return report;
}

std::vector<ChangeReport> apply_profile(const NetworkProfile& profile,
                                        const fs::path& sandbox_root,
                                        ProcessLauncher& launcher,
                                        const BackendSet& enabled) {
    std::vector<ChangeReport> reports;
    const auto run = [&reports](std::string name, auto&& backend) {
        try {
            reports.push_back(backend());
        } catch (const ModifierError& e) {
            reports.push_back({.modifier_name = std::move(name), .error = ReportError{e.code(), e.what()}});
        } catch (const std::exception& e) {
            reports.push_back({.modifier_name = std::move(name), .error = ReportError{ModifierErrorCode::IoFailure, e.what()}});
        }
    };

    if (enabled.browser) {
        run("browser", [&] {
            return profile.homepage_url.empty() ? ChangeReport{.modifier_name = "browser"}
                                                : browser_homepage_apply(profile.homepage_url, sandbox_root);
        });
    }
    if (enabled.media) run("media", [&] { return default_media_apply(profile.default_media, sandbox_root); });
    if (enabled.messenger) {
        run("messenger", [&] {
            return profile.messenger_account.empty() ? ChangeReport{.modifier_name = "messenger"}
                                                     : messenger_apply(profile.messenger_account, sandbox_root);
        });
    }
    if (enabled.email) run("email", [&] { return email_apply(profile.email_command, launcher); });
    return reports;
}

}  // namespace netprofile
