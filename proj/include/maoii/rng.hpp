#pragma once

#include <cstdint>

namespace maoii {

/// SplitMix64: tiny counter-based generator. Independent streams are
/// derived by hashing (seed, run, stream), so trajectories are
/// reproducible regardless of how runs are scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream derivation: mixes the key tuple into a fresh state.
    static Rng stream(std::uint64_t seed, std::uint64_t run, std::uint64_t stream_id) {
        Rng mixer(seed);
        mixer.state_ += 0x9e3779b97f4a7c15ULL * (run + 1);
        mixer.next();
        mixer.state_ += 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        mixer.next();
        return mixer;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double prob) { return uniform() < prob; }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

}  // namespace maoii
