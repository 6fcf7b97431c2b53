#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace hopfpi::detail {

// String-keyed build-once cache. Lookups take the lock; builds run outside it
// (builders may recursively consult other caches); the first insert wins.
// std::map node stability keeps returned references valid while entries are
// added concurrently.
template <typename T>
class KeyedCache {
public:
    template <typename Builder>
    const T& get(const std::string& key, Builder&& build) const {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        T value = build();
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, fresh] = map_.try_emplace(key, std::move(value));
        (void)fresh;
        return it->second;
    }

    bool contains(const std::string& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return map_.count(key) > 0;
    }

private:
    mutable std::mutex mutex_;
    mutable std::map<std::string, T> map_;
};

} // namespace hopfpi::detail
