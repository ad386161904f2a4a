#pragma once
// Seedable RNG with portable draw semantics and named stream splitting.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distribution shaping (unit doubles, bounded ints, sampling
// without replacement) is implemented here rather than through
// std::uniform_*_distribution, whose outputs vary across standard libraries.
// A run is therefore bit-reproducible across platforms.
//
// Streams are derived, never shared: stream(seed, tag, index) mixes the
// master seed with an FNV-1a hash of the tag and the index through
// splitmix64. The search derives one stream per (task, pair), negative
// sampling one per (task, purpose), so phases and tasks can be reordered or
// parallelized without perturbing each other's draws.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dcpath {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

    // Derived stream seed for (seed, tag, index).
    static std::uint64_t stream_seed(std::uint64_t seed, std::string_view tag,
                                     std::uint64_t index = 0) {
        return detail::splitmix64(seed ^ detail::splitmix64(detail::fnv1a(tag) + index));
    }

    static SplitRng stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
        return SplitRng(stream_seed(seed, tag, index));
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling, unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t x = engine_();
            if (x >= threshold) return x % bound;
        }
    }

    // k distinct indices from [0, n), in selection order (partial Fisher-Yates).
    std::vector<std::uint32_t> sample_indices(std::uint32_t n, std::uint32_t k) {
        if (k > n) k = n;
        std::vector<std::uint32_t> idx(n);
        for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
        for (std::uint32_t i = 0; i < k; ++i) {
            auto j = i + static_cast<std::uint32_t>(next_below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dcpath
