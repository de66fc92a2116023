#pragma once

// Deterministic randomness. Every random choice in the library flows through
// an Rng seeded via derive_seed(master, stream, counter), so a whole run is
// reproducible from one master seed. The generator is std::mt19937_64, whose
// raw output sequence is fixed by the C++ standard; bounded sampling and
// shuffling are implemented here because the <random> distribution classes
// are implementation-defined and would break cross-platform reproducibility.

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace tourney {

// Per-component stream ids for derive_seed.
namespace stream {
inline constexpr std::uint64_t kGenerator = 1;
inline constexpr std::uint64_t kLocalSearch = 2;
inline constexpr std::uint64_t kPartition = 3;
inline constexpr std::uint64_t kDrc = 4;
inline constexpr std::uint64_t kKst = 5;
inline constexpr std::uint64_t kDriver = 6;
inline constexpr std::uint64_t kExperiment = 7;
}  // namespace stream

// SplitMix64 step (Steele/Lea/Vigna); used only for seed mixing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id,
                                 std::uint64_t counter = 0) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (stream_id + 0x9e3779b97f4a7c15ULL);
    h = splitmix64(s);
    s = h ^ (counter + 0xbf58476d1ce4e5b9ULL);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, bound); unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = gen_();
            if (x >= threshold) return x % bound;
        }
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    // 53-bit uniform in [0, 1).
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // First k elements become a uniform k-subset, order randomized.
    template <class T>
    void partial_shuffle(std::vector<T>& v, std::size_t k) {
        assert(k <= v.size());
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + below(v.size() - i);
            std::swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace tourney
