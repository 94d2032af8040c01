#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netprofile/fs_util.hpp"
#include "netprofile/lru_cache.hpp"
#include "netprofile/network_id.hpp"
#include "netprofile/profile.hpp"

namespace netprofile {

inline constexpr std::size_t kDefaultCacheCapacity = 8;

/// One profile file per network under `<home_root>/.networkdaemon/`.
class ProfileRepository {
public:
    /// Creates the base directory if needed. Throws IoFailure.
    explicit ProfileRepository(const std::filesystem::path& home_root);

    [[nodiscard]] const std::filesystem::path& base_dir() const { return base_dir_; }

    /// Atomic overwrite of `<base_dir>/<id>`. Throws InvalidProfile, IoFailure.
    void store(const NetworkId& id, const NetworkProfile& profile);

    /// nullopt when no file exists. Throws DecodeFailure for a malformed file.
    std::optional<DecodeResult> load(const NetworkId& id);

    /// Sorted; skips hidden and non-regular entries.
    [[nodiscard]] std::vector<NetworkId> list() const;

    /// Number of load() calls that reached the file system.
    [[nodiscard]] std::size_t disk_reads() const { return disk_reads_; }

private:
    std::filesystem::path base_dir_;
    std::size_t disk_reads_ = 0;
};

using ProfileCache = LruCache<NetworkId, NetworkProfile>;

/// Cache-first lookup backed by the repository.
class ProfileStore {
public:
    ProfileStore(ProfileRepository& repo, std::size_t cache_capacity = kDefaultCacheCapacity);

    /// Cache hit returns the cached value without touching disk. A miss loads
    /// from the repository and caches a found profile. Unknown-key warnings
    /// from the load are appended to `warnings` when given.
    std::optional<NetworkProfile> lookup(const NetworkId& id, std::vector<std::string>* warnings = nullptr);

    /// Writes through to disk and refreshes the cached copy.
    void store(const NetworkId& id, const NetworkProfile& profile);

    ProfileRepository& repository() { return repo_; }
    ProfileCache& cache() { return cache_; }

private:
    ProfileRepository& repo_;
    ProfileCache cache_;
};

}  // namespace netprofile
