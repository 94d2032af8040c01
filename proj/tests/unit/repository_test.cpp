#include <gtest/gtest.h>

#include <thread>

#include "netprofile/fs_util.hpp"
#include "netprofile/repository.hpp"
#include "temp_dir.hpp"

namespace netprofile {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

NetworkProfile named(const std::string& name) {
    NetworkProfile p;
    p.display_name = name;
    p.homepage_url = "http://" + name + ".example/";
    return p;
}

TEST(NetworkIdName, Validity) {
    EXPECT_TRUE(NetworkId::is_valid("192.168.1.7_192.168.1.1"));
    EXPECT_FALSE(NetworkId::is_valid(""));
    EXPECT_FALSE(NetworkId::is_valid("a/b"));
    EXPECT_FALSE(NetworkId::is_valid("a\\b"));
    EXPECT_FALSE(NetworkId::is_valid("a b"));
    EXPECT_FALSE(NetworkId::is_valid(".hidden"));
    EXPECT_FALSE(NetworkId::is_valid(std::string(256, 'x')));
    EXPECT_THROW(NetworkId("a/b"), InvalidNetworkId);
}

TEST(Repository, CreatesHiddenBaseDir) {
    TempDir home;
    ProfileRepository repo(home.path());
    EXPECT_EQ(repo.base_dir(), home.path() / ".networkdaemon");
    EXPECT_TRUE(fs::is_directory(repo.base_dir()));
}

TEST(Repository, StoreLoadRoundTrip) {
    TempDir home;
    ProfileRepository repo(home.path());
    const NetworkId id("192.168.1.7_192.168.1.1");
    EXPECT_FALSE(repo.load(id));
    repo.store(id, named("office"));
    EXPECT_EQ(repo.load(id)->profile, named("office"));
    EXPECT_EQ(testing::slurp(repo.base_dir() / id.str()), encode_profile(named("office")));
}

TEST(Repository, LastWriteWins) {
    TempDir home;
    ProfileRepository repo(home.path());
    const NetworkId id("A");
    repo.store(id, named("first"));
    repo.store(id, named("second"));
    EXPECT_EQ(repo.load(id)->profile, named("second"));
    // no temp files left behind
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(repo.base_dir())) {
        (void)e;
        ++files;
    }
    EXPECT_EQ(files, 1u);
}

TEST(Repository, MalformedFileIsNotAbsence) {
    TempDir home;
    ProfileRepository repo(home.path());
    testing::spit(repo.base_dir() / "broken", "display_name=x\nnot a line\n");
    EXPECT_THROW(repo.load(NetworkId("broken")), DecodeFailure);
}

TEST(Repository, UnknownKeyWarning) {
    TempDir home;
    ProfileRepository repo(home.path());
    fs::copy_file(testing::fixture("profiles/office_with_unknown_key"), repo.base_dir() / "office");
    const auto loaded = repo.load(NetworkId("office"));
    ASSERT_TRUE(loaded);
    EXPECT_EQ(loaded->profile.homepage_url, "http://www.office.com");
    EXPECT_EQ(loaded->warnings.size(), 1u);
}

TEST(Repository, ListSkipsHiddenAndSorts) {
    TempDir home;
    ProfileRepository repo(home.path());
    repo.store(NetworkId("b"), named("b"));
    repo.store(NetworkId("a"), named("a"));
    testing::spit(repo.base_dir() / ".a.tmp.123", "junk");
    fs::create_directory(repo.base_dir() / "subdir");
    const auto ids = repo.list();
    ASSERT_EQ(ids.size(), 2u);
    EXPECT_EQ(ids[0].str(), "a");
    EXPECT_EQ(ids[1].str(), "b");
}

TEST(Repository, ReadersNeverSeeTornWrites) {
    TempDir home;
    ProfileRepository repo(home.path());
    const NetworkId id("churn");
    NetworkProfile big = named("big");
    big.display_name = std::string(200000, 'x');
    const NetworkProfile small = named("small");
    repo.store(id, small);
    const auto path = repo.base_dir() / id.str();
    const auto big_text = encode_profile(big);
    const auto small_text = encode_profile(small);

    std::atomic<bool> done{false};
    std::thread writer([&] {
        for (int i = 0; i < 200; ++i) write_file_atomic(path, i % 2 ? small_text : big_text);
        done = true;
    });
    std::size_t reads = 0;
    while (!done) {
        const auto text = read_file(path);
        ASSERT_TRUE(text);
        ASSERT_TRUE(*text == big_text || *text == small_text);
        ++reads;
    }
    writer.join();
    EXPECT_GT(reads, 0u);
}

TEST(ProfileStore, DiskHitIsCached) {
    TempDir home;
    ProfileRepository repo(home.path());
    repo.store(NetworkId("A"), named("a"));
    ProfileStore store(repo, 4);
    EXPECT_EQ(store.lookup(NetworkId("A")), named("a"));
    const auto reads = repo.disk_reads();
    EXPECT_EQ(store.lookup(NetworkId("A")), named("a"));
    EXPECT_EQ(repo.disk_reads(), reads);
    EXPECT_TRUE(store.cache().contains(NetworkId("A")));
}

TEST(ProfileStore, MissLeavesCacheUnchanged) {
    TempDir home;
    ProfileRepository repo(home.path());
    ProfileStore store(repo, 4);
    EXPECT_FALSE(store.lookup(NetworkId("nowhere")));
    EXPECT_EQ(store.cache().size(), 0u);
}

TEST(ProfileStore, CacheFirstEvenIfFileDeleted) {
    TempDir home;
    ProfileRepository repo(home.path());
    ProfileStore store(repo, 4);
    store.store(NetworkId("A"), named("a"));
    fs::remove(repo.base_dir() / "A");
    EXPECT_EQ(store.lookup(NetworkId("A")), named("a"));
}

TEST(ProfileStore, RestoreRefreshesCache) {
    TempDir home;
    ProfileRepository repo(home.path());
    ProfileStore store(repo, 4);
    store.store(NetworkId("A"), named("a"));
    store.store(NetworkId("A"), named("a2"));
    EXPECT_EQ(store.lookup(NetworkId("A")), named("a2"));
    EXPECT_EQ(repo.load(NetworkId("A"))->profile, named("a2"));
}

TEST(ProfileStore, DecodeFailurePropagates) {
    TempDir home;
    ProfileRepository repo(home.path());
    testing::spit(repo.base_dir() / "bad", "garbage\n");
    ProfileStore store(repo, 4);
    EXPECT_THROW(store.lookup(NetworkId("bad")), DecodeFailure);
}

}  // namespace
}  // namespace netprofile
