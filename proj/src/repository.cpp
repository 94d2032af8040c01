#include "netprofile/repository.hpp"

#include <algorithm>

namespace netprofile {

namespace fs = std::filesystem;

ProfileRepository::ProfileRepository(const fs::path& home_root) : base_dir_(home_root / ".networkdaemon") {
    std::error_code ec;
    fs::create_directories(base_dir_, ec);
    if (ec) throw IoFailure("cannot create " + base_dir_.string() + ": " + ec.message());
}

void ProfileRepository::store(const NetworkId& id, const NetworkProfile& profile) {
    write_file_atomic(base_dir_ / id.str(), encode_profile(profile));
}

std::optional<DecodeResult> ProfileRepository::load(const NetworkId& id) {
    ++disk_reads_;
    const auto content = read_file(base_dir_ / id.str());
    if (!content) return std::nullopt;
    try {
        return decode_profile(*content);
    } catch (const DecodeFailure& e) {
        throw DecodeFailure(e.line(), id.str() + ": " + e.what());
    }
}

std::vector<NetworkId> ProfileRepository::list() const {
    std::vector<NetworkId> ids;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(base_dir_, ec)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (NetworkId::is_valid(name)) ids.emplace_back(name);
    }
    if (ec) throw IoFailure("cannot list " + base_dir_.string() + ": " + ec.message());
    std::sort(ids.begin(), ids.end());
    return ids;
}

ProfileStore::ProfileStore(ProfileRepository& repo, std::size_t cache_capacity) : repo_(repo), cache_(cache_capacity) {}

std::optional<NetworkProfile> ProfileStore::lookup(const NetworkId& id, std::vector<std::string>* warnings) {
    if (auto hit = cache_.get(id)) return hit;
    auto loaded = repo_.load(id);
    if (!loaded) return std::nullopt;
    if (warnings) warnings->insert(warnings->end(), loaded->warnings.begin(), loaded->warnings.end());
    cache_.put(id, loaded->profile);
    return std::move(loaded->profile);
}

void ProfileStore::store(const NetworkId& id, const NetworkProfile& profile) {
    repo_.store(id, profile);
    cache_.put(id, profile);
}

}  // namespace netprofile
