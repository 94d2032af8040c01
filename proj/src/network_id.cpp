#include "netprofile/network_id.hpp"

namespace netprofile {

bool NetworkId::is_valid(std::string_view value) {
    if (value.empty() || value.size() > 255 || value.front() == '.') return false;
    for (const char c : value) {
        const auto u = static_cast<unsigned char>(c);
        if (c == '/' || c == '\\' || u <= 0x20 || u == 0x7f) return false;
    }
    return true;
}

NetworkId::NetworkId(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw InvalidNetworkId("invalid network id: '" + value_ + "'");
}

}  // namespace netprofile
