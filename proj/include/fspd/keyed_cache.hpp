/**
 * @file keyed_cache.hpp
 * @brief Small thread-safe memoization map (concurrent reads, exclusive writes).
 */

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>

namespace fspd {

/// Memoizes values of a pure computation by key. Reads take a shared lock;
/// inserts take an exclusive lock. The first stored value for a key wins, so
/// concurrent duplicate computes stay deterministic.
template <typename K, typename V>
class KeyedCache {
public:
    std::optional<V> get(const K& key) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// Returns the cached value, computing (outside any lock) on a miss.
    template <typename F>
    V get_or_compute(const K& key, F&& compute) {
        if (auto hit = get(key)) {
            return *hit;
        }
        V value = compute();
        std::unique_lock lock(mutex_);
        auto [it, inserted] = map_.try_emplace(key, std::move(value));
        return it->second;
    }

    void put(const K& key, V value) {
        std::unique_lock lock(mutex_);
        map_.insert_or_assign(key, std::move(value));
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<K, V> map_;
};

}  // namespace fspd
