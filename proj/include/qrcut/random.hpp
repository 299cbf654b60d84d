#pragma once

// Counter-based deterministic randomness.
//
// Every draw is a pure function of (seed, stream, counter): the SplitMix64 finaliser
// applied to a mix of the three words. Edge decisions use (seed, colex rank) directly,
// so sampling is order-independent and reproducible across platforms.

#include "qrcut/rational.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qrcut {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ counter);
}

/// Stream tags keep independent uses of one seed apart.
enum class Stream : std::uint64_t {
    edges = 1,
    vertex_shuffle = 2,
    cut_trials = 3,
    subset_trials = 4,
    test_data = 5,
};

class CounterRng {
public:
    CounterRng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0)
        : seed_(counter_hash(seed, static_cast<std::uint64_t>(stream), substream)) {}

    std::uint64_t next() { return counter_hash(seed_, 0, counter_++); }

    /// Uniform integer in [0, bound), by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("CounterRng::below: empty range");
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Bernoulli(q) from a 64-bit uniform word: success iff word < floor(q * 2^64). q must lie in [0,1].
class BernoulliThreshold {
public:
    explicit BernoulliThreshold(const BigRational& q) {
        if (q < 0 || q > 1) throw std::invalid_argument("probability outside [0,1]: " + to_string(q));
        always_ = q == 1;
        BigInt scaled = (q.get_num() << 64) / q.get_den();
        threshold_ = always_ ? UINT64_MAX : static_cast<std::uint64_t>(0);
        if (!always_) {
            // scaled < 2^64 here
            BigInt hi = scaled >> 32, lo = scaled - (hi << 32);
            threshold_ = (static_cast<std::uint64_t>(hi.get_ui()) << 32) | static_cast<std::uint64_t>(lo.get_ui());
        }
    }

    bool operator()(std::uint64_t word) const { return always_ || word < threshold_; }

private:
    std::uint64_t threshold_ = 0;
    bool always_ = false;
};

}  // namespace qrcut
