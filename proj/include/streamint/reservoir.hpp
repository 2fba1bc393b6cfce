#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "streamint/errors.hpp"
#include "streamint/rng.hpp"

namespace streamint {

// Bounded random sample of a weighted stream. The first `capacity` items are
// stored unconditionally; afterwards an item of measure M is accepted with
// probability min(1, capacity * M / T) where T is the total measure offered
// so far (including the new item), and an accepted item replaces a uniformly
// chosen incumbent. An item's chance of being retained is proportional to its
// measure.
template <typename T>
class Reservoir {
public:
    explicit Reservoir(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw DomainError("reservoir capacity must be positive");
        items_.reserve(capacity);
    }

    // Returns true if the item was stored (possibly evicting an incumbent).
    bool offer(T item, double measure, Rng& rng) {
        if (!(measure > 0.0)) throw DomainError("reservoir: item measure must be positive");
        ++count_seen_;
        total_weight_ += measure;
        if (items_.size() < capacity_) {
            items_.push_back(std::move(item));
            return true;
        }
        const double accept = capacity_ * measure / total_weight_;
        if (accept >= 1.0 || rng.bernoulli(accept)) {
            items_[rng.next_index(capacity_)] = std::move(item);
            assert(items_.size() == std::min<std::uint64_t>(capacity_, count_seen_));
            return true;
        }
        return false;
    }

    // Retention probability for an item of the given measure in the stream
    // seen so far. During the fill phase everything offered is retained.
    double inclusion_probability(double item_measure) const {
        if (!(item_measure > 0.0)) throw DomainError("reservoir: item measure must be positive");
        if (count_seen_ == 0 || !(total_weight_ > 0.0))
            throw StateError("reservoir: inclusion probability undefined before any offer");
        if (count_seen_ <= capacity_) return 1.0;
        return std::min(1.0, capacity_ * item_measure / total_weight_);
    }

    // Copy of the retained payloads, in slot order. Never mutates state.
    std::vector<T> snapshot() const { return items_; }

    const std::vector<T>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t count_seen() const { return count_seen_; }
    double total_weight() const { return total_weight_; }

private:
    std::size_t capacity_;
    std::vector<T> items_;
    double total_weight_ = 0.0;
    std::uint64_t count_seen_ = 0;
};

enum class WindowMode {
    // Keep the `capacity` entries of minimum priority among the live window.
    // On an expiry-free window this retains a uniformly random k-subset.
    exact,
    // Simplified scheme: append while not full, otherwise overwrite a random
    // incumbent. Not uniform, kept for reproducing the simpler variant.
    compat,
};

enum class LatePolicy { strict, reject, clamp };

// Sample of the recent portion of a timestamped stream. Event-time driven:
// an entry is live while (newest timestamp - its timestamp) < window_length.
// Bounded at `capacity` entries; candidates dropped earlier cannot re-enter
// after an expiry, which is the price of the O(k) memory bound.
template <typename T>
class WindowSampler {
public:
    struct Entry {
        T item;
        std::int64_t timestamp;
        double priority;
    };

    WindowSampler(std::size_t capacity, std::int64_t window_length,
                  WindowMode mode = WindowMode::exact,
                  LatePolicy late = LatePolicy::strict)
        : capacity_(capacity), window_length_(window_length), mode_(mode), late_(late) {
        if (capacity == 0) throw DomainError("window sampler capacity must be positive");
        if (window_length <= 0) throw DomainError("window length must be positive");
    }

    // Returns true if the item entered the retained set.
    bool offer(T item, std::int64_t timestamp, Rng& rng) {
        if (has_seen_ && timestamp < newest_) {
            switch (late_) {
            case LatePolicy::strict:
                throw OrderingError("window sampler: decreasing timestamp");
            case LatePolicy::reject:
                ++rejected_late_;
                return false;
            case LatePolicy::clamp:
                timestamp = newest_;
                break;
            }
        }
        has_seen_ = true;
        newest_ = std::max(newest_, timestamp);
        evict_expired(newest_);
        const double priority = rng.next_unit();

        if (mode_ == WindowMode::compat) {
            if (entries_.size() < capacity_) {
                entries_.push_back(Entry{std::move(item), timestamp, priority});
            } else {
                entries_[rng.next_index(capacity_)] = Entry{std::move(item), timestamp, priority};
            }
            return true;
        }

        if (entries_.size() < capacity_) {
            entries_.push_back(Entry{std::move(item), timestamp, priority});
            return true;
        }
        // Ties keep the incumbent: earlier arrival wins.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (entries_[i].priority > entries_[worst].priority) worst = i;
        }
        if (priority < entries_[worst].priority) {
            entries_[worst] = Entry{std::move(item), timestamp, priority};
            return true;
        }
        return false;
    }

    // Drops entries that have fallen out of the window ending at `now`.
    void evict_expired(std::int64_t now) {
        newest_ = std::max(newest_, now);
        std::erase_if(entries_, [&](const Entry& e) { return now - e.timestamp >= window_length_; });
    }

    std::vector<T> live_items() const {
        std::vector<T> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.item);
        return out;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    std::int64_t window_length() const { return window_length_; }
    std::uint64_t rejected_late() const { return rejected_late_; }

private:
    std::size_t capacity_;
    std::int64_t window_length_;
    WindowMode mode_;
    LatePolicy late_;
    std::vector<Entry> entries_;
    std::int64_t newest_ = 0;
    bool has_seen_ = false;
    std::uint64_t rejected_late_ = 0;
};

} // namespace streamint
