#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace netprofile::text {

std::string_view trim(std::string_view s);

/// Splits on '\n'. A trailing newline does not produce an empty last element;
/// a '\r' before the newline is stripped.
std::vector<std::string_view> split_lines(std::string_view s);

/// Splits on runs of spaces/tabs, dropping empty tokens.
std::vector<std::string_view> split_ws(std::string_view s);

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

}  // namespace netprofile::text
