#include "netprofile/http_head.hpp"

#include "netprofile/text.hpp"

namespace netprofile {

namespace {

bool is_token_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u > 0x20 && u < 0x7f;
}

/// Splits off the first line (LF or CRLF). nullopt when no line terminator.
std::optional<std::string_view> take_line(std::string_view& rest) {
    const auto nl = rest.find('\n');
    if (nl == std::string_view::npos) return std::nullopt;
    auto line = rest.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    rest.remove_prefix(nl + 1);
    return line;
}

HeaderList parse_headers(std::string_view rest) {
    HeaderList headers;
    while (auto line = take_line(rest)) {
        if (line->empty()) break;
        const auto colon = line->find(':');
        if (colon == std::string_view::npos || colon == 0) break;
        const auto name = line->substr(0, colon);
        bool valid = true;
        for (const char c : name) valid = valid && is_token_char(c) && c != ':';
        if (!valid) break;
        headers.emplace_back(std::string(name), std::string(text::trim(line->substr(colon + 1))));
    }
    return headers;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    for (const auto token : text::split_ws(s)) {
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

}  // namespace

std::optional<HttpRequestHead> parse_http_request_head(std::string_view payload) {
    std::string_view rest = payload;
    const auto line = take_line(rest);
    if (!line) return std::nullopt;

    const auto sp1 = line->find(' ');
    if (sp1 == std::string_view::npos || sp1 == 0) return std::nullopt;
    const auto sp2 = line->find(' ', sp1 + 1);
    if (sp2 == std::string_view::npos || sp2 == sp1 + 1) return std::nullopt;
    const auto method = line->substr(0, sp1);
    const auto target = line->substr(sp1 + 1, sp2 - sp1 - 1);
    const auto version = line->substr(sp2 + 1);
    for (const char c : method) {
        if (!is_token_char(c)) return std::nullopt;
    }
    for (const char c : target) {
        if (!is_token_char(c)) return std::nullopt;
    }
    if (!version.starts_with("HTTP/")) return std::nullopt;
    for (const char c : version) {
        if (!is_token_char(c)) return std::nullopt;
    }

    return HttpRequestHead{std::string(method), std::string(target), parse_headers(rest)};
}

std::optional<HttpResponseHead> parse_http_response_head(std::string_view payload) {
    std::string_view rest = payload;
    const auto line = take_line(rest);
    if (!line) return std::nullopt;
    if (!line->starts_with("HTTP/1.0 ") && !line->starts_with("HTTP/1.1 ")) return std::nullopt;

    auto status = line->substr(9);
    if (status.size() < 3) return std::nullopt;
    int code = 0;
    for (int i = 0; i < 3; ++i) {
        if (status[i] < '0' || status[i] > '9') return std::nullopt;
        code = code * 10 + (status[i] - '0');
    }
    if (status.size() > 3 && status[3] != ' ') return std::nullopt;

    return HttpResponseHead{code, collapse_spaces(status.substr(3)), parse_headers(rest)};
}

std::optional<std::string_view> find_header(const HeaderList& headers, std::string_view name) {
    for (const auto& [key, value] : headers) {
        if (text::iequals(key, name)) return std::string_view(value);
    }
    return std::nullopt;
}

}  // namespace netprofile
