#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace netprofile {

/// Per-network application settings.
struct NetworkProfile {
    std::string display_name;
    std::string homepage_url;                          // empty disables the browser backend
    std::map<std::string, std::string> default_media;  // "video/mp4" -> "vlc"
    std::string messenger_account;
    std::string email_command;
    bool is_home = false;

    friend bool operator==(const NetworkProfile&, const NetworkProfile&) = default;
};

class InvalidProfile : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DecodeFailure : public std::runtime_error {
public:
    DecodeFailure(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// MIME keys need exactly one '/' and no '=', whitespace or control bytes.
/// Throws InvalidProfile.
void validate_profile(const NetworkProfile& profile);

bool is_valid_mime_key(std::string_view key);

struct DecodeResult {
    NetworkProfile profile;
    std::vector<std::string> warnings;  // unknown keys, one message each
};

/// Encodes the profile as UTF-8 `key=value` lines:
///
///     display_name=<text>
///     homepage_url=<text>
///     messenger_account=<text>
///     email_command=<text>
///     is_home=true|false
///     media.<mime>=<app>          (one per entry, sorted by mime)
///
/// Values escape '\' as `\\`, LF as `\n` and CR as `\r`.
std::string encode_profile(const NetworkProfile& profile);

/// Inverse of encode_profile. Blank lines and `#` comments are skipped; keys
/// missing from the text keep their defaults. Throws DecodeFailure.
DecodeResult decode_profile(std::string_view text);

/// Applies one `key=value` assignment in the file grammar to `profile`.
/// Returns false for an unknown key. Throws DecodeFailure (line 0) on a bad value.
bool apply_profile_assignment(NetworkProfile& profile, std::string_view assignment);

}  // namespace netprofile
