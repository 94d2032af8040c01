#pragma once

#include <cstddef>
#include <functional>
#include <list>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace netprofile {

/// Fixed-capacity map that evicts the least recently used entry.
/// get() and put() both count as a use.
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class LruCache {
public:
    using Entry = std::pair<Key, Value>;

    explicit LruCache(std::size_t capacity) : capacity_(capacity) {
        if (capacity_ == 0) throw std::invalid_argument("LruCache capacity must be positive");
    }

    /// Hit moves the entry to the most recent position; miss changes nothing.
    std::optional<Value> get(const Key& key) {
        const auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        entries_.splice(entries_.begin(), entries_, it->second);
        return it->second->second;
    }

    /// Inserts or overwrites `key` as most recent. Returns the entry evicted to
    /// stay within capacity, if any.
    std::optional<Entry> put(const Key& key, Value value) {
        if (const auto it = index_.find(key); it != index_.end()) {
            it->second->second = std::move(value);
            entries_.splice(entries_.begin(), entries_, it->second);
            return std::nullopt;
        }
        entries_.emplace_front(key, std::move(value));
        index_.emplace(key, entries_.begin());
        if (entries_.size() <= capacity_) return std::nullopt;

        Entry evicted = std::move(entries_.back());
        index_.erase(evicted.first);
        entries_.pop_back();
        return evicted;
    }

    bool erase(const Key& key) {
        const auto it = index_.find(key);
        if (it == index_.end()) return false;
        entries_.erase(it->second);
        index_.erase(it);
        return true;
    }

    [[nodiscard]] bool contains(const Key& key) const { return index_.contains(key); }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::size_t capacity() const { return capacity_; }

    /// Most recent first.
    [[nodiscard]] const std::list<Entry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::list<Entry> entries_;
    std::unordered_map<Key, typename std::list<Entry>::iterator, Hash> index_;
};

}  // namespace netprofile
