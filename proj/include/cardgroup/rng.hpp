#pragma once

// Deterministic, seedable, splittable randomness.
//
// Every statistical experiment in this library flows from one explicit
// 64-bit seed through SplitMix64, so runs are reproducible bit for bit
// on any platform. Uniform permutations come from a Fisher-Yates shuffle
// whose index sampling is exactly unbiased (multiply-shift with the
// standard threshold test; the retry branch fires with probability
// bound/2^64).

#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/permutation.hpp"

namespace cardgroup {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on {0, ..., bound-1}, exactly unbiased.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below(0)");
        if (bound == 1) return 0;
        while (true) {
            std::uint64_t x = next();
            unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
            std::uint64_t low = static_cast<std::uint64_t>(m);
            if (low >= bound || low >= (0ULL - bound) % bound)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Independent child stream.
    SplitMix64 split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

private:
    std::uint64_t state_;
};

// Per-trial seed derivation for fan-out experiments; results are
// independent of how trials are distributed over threads.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next();
}

inline Permutation random_permutation(SplitMix64& rng, int degree) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 1);
    for (std::size_t i = im.size(); i > 1; --i)
        std::swap(im[i - 1], im[rng.below(i)]);
    return Permutation(std::move(im));
}

// Where a shuffle's hidden permutation comes from. The table draws through
// this interface so tests can script the exact permutations.
class ShuffleSource {
public:
    virtual ~ShuffleSource() = default;
    virtual Permutation draw(int degree) = 0;
};

class SeededShuffleSource final : public ShuffleSource {
public:
    explicit SeededShuffleSource(std::uint64_t seed) : rng_(seed) {}

    Permutation draw(int degree) override { return random_permutation(rng_, degree); }

private:
    SplitMix64 rng_;
};

// Plays back a fixed prefix of draws, then falls through to a seeded source.
// Degree mismatch against the script is a logic error in the test, not a
// protocol condition.
class ScriptedShuffleSource final : public ShuffleSource {
public:
    explicit ScriptedShuffleSource(std::vector<Permutation> script, std::uint64_t fallback_seed = 0)
        : script_(script.begin(), script.end()), fallback_(fallback_seed) {}

    Permutation draw(int degree) override {
        if (!script_.empty()) {
            Permutation p = script_.front();
            script_.pop_front();
            if (p.degree() != degree)
                throw std::logic_error("scripted draw has degree " + std::to_string(p.degree()) +
                                       ", shuffle needs " + std::to_string(degree));
            return p;
        }
        return fallback_.draw(degree);
    }

private:
    std::deque<Permutation> script_;
    SeededShuffleSource fallback_;
};

}  // namespace cardgroup
