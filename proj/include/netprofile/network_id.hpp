#pragma once

#include <compare>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netprofile {

class InvalidNetworkId : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Key of a network in the repository; doubles as its file name.
///
/// Nonempty, at most 255 bytes, no path separators, whitespace or control
/// characters, and no leading '.' (hidden names are reserved for temp files).
class NetworkId {
public:
    /// Throws InvalidNetworkId.
    explicit NetworkId(std::string value);

    static bool is_valid(std::string_view value);

    [[nodiscard]] const std::string& str() const { return value_; }

    friend auto operator<=>(const NetworkId&, const NetworkId&) = default;

private:
    std::string value_;
};

}  // namespace netprofile

template <>
struct std::hash<netprofile::NetworkId> {
    std::size_t operator()(const netprofile::NetworkId& id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
