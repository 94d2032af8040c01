#pragma once

#include <filesystem>
#include <string>

namespace netprofile::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

/// Absolute path of a file under tests/fixtures.
std::filesystem::path fixture(const std::string& rel);

/// Recursive copy including dot-directories.
void copy_tree(const std::filesystem::path& from, const std::filesystem::path& to);

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& content);

}  // namespace netprofile::testing
