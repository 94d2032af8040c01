#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netprofile {

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Whole-file read. nullopt when the file does not exist; IoFailure otherwise.
std::optional<std::string> read_file(const std::filesystem::path& path);

/// Writes `<dir>/.<name>.tmp.<pid>` then renames it over `path`, so readers
/// see either the old or the new content. Throws IoFailure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace netprofile
