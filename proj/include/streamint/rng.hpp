#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace streamint {

// Seedable, splittable random generator. Every sampler owns its own instance,
// so replaying a stream with the same seed reproduces the sample trajectory
// bit for bit. The uniform mappings below are implemented by hand because the
// standard distributions are not pinned down by the standard, while
// std::mt19937_64 itself is.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(expand(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). bound must be nonzero.
    std::size_t next_index(std::size_t bound) {
        const std::uint64_t n = bound;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    bool bernoulli(double p) { return next_unit() < p; }

    // Independent substream. Children drawn from the same parent are
    // independent of each other and of the parent's later output.
    Rng split() { return Rng(engine_()); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_index(i)]);
        }
    }

private:
    // splitmix64: decorrelates consecutive seeds before they reach the engine.
    static std::uint64_t expand(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace streamint
