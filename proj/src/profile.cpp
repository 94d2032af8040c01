#include "netprofile/profile.hpp"

#include "netprofile/text.hpp"

namespace netprofile {

DecodeFailure::DecodeFailure(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

constexpr std::string_view kMediaPrefix = "media.";

std::string escape(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (const char c : value) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape(std::string_view value, std::size_t line) {
    std::string out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] != '\\') {
            out += value[i];
            continue;
        }
        if (++i == value.size()) throw DecodeFailure(line, "dangling escape");
        switch (value[i]) {
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: throw DecodeFailure(line, std::string("unknown escape \\") + value[i]);
        }
    }
    return out;
}

bool apply_assignment(NetworkProfile& p, std::string_view key, std::string_view raw, std::size_t line) {
    std::string value = unescape(raw, line);
    if (key == "display_name") {
        p.display_name = std::move(value);
    } else if (key == "homepage_url") {
        p.homepage_url = std::move(value);
    } else if (key == "messenger_account") {
        p.messenger_account = std::move(value);
    } else if (key == "email_command") {
        p.email_command = std::move(value);
    } else if (key == "is_home") {
        if (value == "true") {
            p.is_home = true;
        } else if (value == "false") {
            p.is_home = false;
        } else {
            throw DecodeFailure(line, "is_home must be true or false, got '" + value + "'");
        }
    } else if (key.starts_with(kMediaPrefix)) {
        const auto mime = key.substr(kMediaPrefix.size());
        if (!is_valid_mime_key(mime)) throw DecodeFailure(line, "bad MIME key '" + std::string(mime) + "'");
        if (value.empty()) {
            p.default_media.erase(std::string(mime));
        } else {
            p.default_media[std::string(mime)] = std::move(value);
        }
    } else {
        return false;
    }
    return true;
}

}  // namespace

bool is_valid_mime_key(std::string_view key) {
    const auto slash = key.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == key.size()) return false;
    if (key.find('/', slash + 1) != std::string_view::npos) return false;
    for (const char c : key) {
        const auto u = static_cast<unsigned char>(c);
        if (c == '=' || u <= 0x20 || u == 0x7f) return false;
    }
    return true;
}

void validate_profile(const NetworkProfile& profile) {
    for (const auto& [mime, app] : profile.default_media) {
        if (!is_valid_mime_key(mime)) throw InvalidProfile("bad MIME key '" + mime + "'");
        if (app.empty()) throw InvalidProfile("empty application for '" + mime + "'");
    }
}

std::string encode_profile(const NetworkProfile& profile) {
    validate_profile(profile);
    std::string out;
    const auto line = [&out](std::string_view key, std::string_view value) {
        out += key;
        out += '=';
        out += escape(value);
        out += '\n';
    };
    line("display_name", profile.display_name);
    line("homepage_url", profile.homepage_url);
    line("messenger_account", profile.messenger_account);
    line("email_command", profile.email_command);
    line("is_home", profile.is_home ? "true" : "false");
    for (const auto& [mime, app] : profile.default_media) line(std::string(kMediaPrefix) + mime, app);
    return out;
}

DecodeResult decode_profile(std::string_view text) {
    DecodeResult result;
    std::size_t number = 0;
    for (const auto line : text::split_lines(text)) {
        ++number;
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0) throw DecodeFailure(number, "expected key=value");
        const auto key = line.substr(0, eq);
        if (!apply_assignment(result.profile, key, line.substr(eq + 1), number)) {
            result.warnings.push_back("line " + std::to_string(number) + ": unknown key '" + std::string(key) + "'");
        }
    }
    return result;
}

bool apply_profile_assignment(NetworkProfile& profile, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw DecodeFailure(0, "expected key=value, got '" + std::string(assignment) + "'");
    }
    return apply_assignment(profile, assignment.substr(0, eq), assignment.substr(eq + 1), 0);
}

}  // namespace netprofile
