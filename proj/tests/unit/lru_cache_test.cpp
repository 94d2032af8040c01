#include <gtest/gtest.h>

#include <random>
#include <string>

#include "lru_oracle.hpp"
#include "netprofile/lru_cache.hpp"

namespace netprofile {
namespace {

TEST(LruCache, EmptyMiss) {
    LruCache<std::string, int> c(2);
    EXPECT_FALSE(c.get("a"));
    EXPECT_EQ(c.size(), 0u);
}

TEST(LruCache, PutThenGet) {
    LruCache<std::string, int> c(2);
    EXPECT_FALSE(c.put("a", 1));
    EXPECT_EQ(c.get("a"), 1);
}

TEST(LruCache, GetRefreshesRecency) {
    LruCache<std::string, int> c(2);
    c.put("A", 1);
    c.put("B", 2);
    c.get("A");
    const auto evicted = c.put("C", 3);
    ASSERT_TRUE(evicted);
    EXPECT_EQ(evicted->first, "B");
    EXPECT_TRUE(c.contains("A"));
    EXPECT_FALSE(c.contains("B"));
}

TEST(LruCache, CapacityOne) {
    LruCache<std::string, int> c(1);
    c.put("A", 1);
    const auto evicted = c.put("B", 2);
    ASSERT_TRUE(evicted);
    EXPECT_EQ(*evicted, (std::pair<std::string, int>{"A", 1}));
}

TEST(LruCache, OverwriteDoesNotEvict) {
    LruCache<std::string, int> c(2);
    c.put("A", 1);
    c.put("B", 2);
    EXPECT_FALSE(c.put("A", 10));
    EXPECT_EQ(c.get("A"), 10);
    EXPECT_EQ(c.size(), 2u);
}

TEST(LruCache, ZeroCapacityRejected) { EXPECT_THROW((LruCache<int, int>(0)), std::invalid_argument); }

TEST(LruCache, MatchesOracleOnRandomOps) {
    for (std::uint32_t seed = 1; seed <= 20; ++seed) {
        std::mt19937 rng(seed);
        const std::size_t cap = 1 + seed % 6;
        LruCache<int, int> cache(cap);
        testing::RecencyListOracle<int, int> oracle(cap);
        for (int op = 0; op < 2000; ++op) {
            const int key = static_cast<int>(rng() % 10);
            if (rng() % 2) {
                ASSERT_EQ(cache.get(key), oracle.get(key)) << "seed " << seed << " op " << op;
            } else {
                const int value = static_cast<int>(rng());
                ASSERT_EQ(cache.put(key, value), oracle.put(key, value)) << "seed " << seed << " op " << op;
            }
            ASSERT_LE(cache.size(), cap);
            ASSERT_TRUE(std::equal(cache.entries().begin(), cache.entries().end(), oracle.items().begin(), oracle.items().end()));
        }
    }
}

}  // namespace
}  // namespace netprofile
