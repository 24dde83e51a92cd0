#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "crtmst/graph.hpp"

namespace crtmst {

// SplitMix64 finalizer; also the seeding function for SeededRng.
std::uint64_t splitmix64(std::uint64_t& state);

/**
 * xoshiro256** seeded through SplitMix64. The stream is a pure function of
 * the seed on every platform; derived substreams depend only on the seed and
 * the label, never on how much of the parent stream was consumed.
 *
 * Satisfies std::uniform_random_bit_generator, but callers that need
 * cross-platform reproducibility should use the helpers below rather than
 * the <random> distributions, whose outputs are implementation-defined.
 */
class SeededRng {
public:
    using result_type = std::uint64_t;

    explicit SeededRng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next();
    result_type operator()() { return next(); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    SeededRng derive_substream(std::uint64_t label) const;
    SeededRng derive_substream(std::string_view label) const;

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

enum class Coin { heads, tails };

Coin coin(SeededRng& rng);

// Uniform over [lo, hi], debiased by rejection. Throws std::invalid_argument if lo > hi.
std::uint64_t uniform_int(SeededRng& rng, std::uint64_t lo, std::uint64_t hi);

// Uniform over [0, 1) with 53 random bits.
double uniform_real(SeededRng& rng);

// Box-Muller; one normal per call.
double standard_normal(SeededRng& rng);

/**
 * Fisher-Yates sequence over [0, n): a partially shuffled identity
 * permutation that serves distinct values in O(1) per draw.
 *
 * Preparation costs O(n) and happens once; rewind() undoes the swaps of the
 * draws served so far in O(draws), so one prepared sequence can serve many
 * independent rounds of sampling without another O(n) pass.
 */
class FySequence {
public:
    // Throws std::invalid_argument when n == 0.
    FySequence(std::size_t n, SeededRng rng);

    // Swaps position `drawn()` with a uniform position in [drawn(), n) and
    // returns the value landing there. Throws std::out_of_range when exhausted.
    Vertex next();

    std::size_t size() const { return perm_.size(); }
    std::size_t drawn() const { return swaps_.size(); }
    std::size_t remaining() const { return size() - drawn(); }

    // Restores the identity permutation and continues with a new stream.
    void rewind(SeededRng rng);

private:
    std::vector<Vertex> perm_;
    std::vector<Vertex> swaps_;
    SeededRng rng_;
};

inline FySequence fy_prepare(std::size_t n, SeededRng rng) {
    return FySequence(n, rng);
}

}  // namespace crtmst
