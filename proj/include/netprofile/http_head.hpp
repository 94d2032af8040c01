#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netprofile {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

struct HttpRequestHead {
    std::string method;
    std::string target;
    HeaderList headers;
};

struct HttpResponseHead {
    int status_code = 0;
    std::string reason;  // internal whitespace runs collapsed to one space
    HeaderList headers;
};

/// `<token> <token> HTTP/...` request line, then headers up to the first blank
/// line or the end of the segment. nullopt for anything else.
std::optional<HttpRequestHead> parse_http_request_head(std::string_view payload);

/// Status line must start with `HTTP/1.0 ` or `HTTP/1.1 ` followed by a
/// three-digit code.
std::optional<HttpResponseHead> parse_http_response_head(std::string_view payload);

/// First header whose name matches case-insensitively.
std::optional<std::string_view> find_header(const HeaderList& headers, std::string_view name);

}  // namespace netprofile
