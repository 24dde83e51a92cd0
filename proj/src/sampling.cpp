#include "crtmst/sampling.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace crtmst {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
        word = splitmix64(sm);
    }
}

std::uint64_t SeededRng::next() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

SeededRng SeededRng::derive_substream(std::uint64_t label) const {
    std::uint64_t a = seed_;
    std::uint64_t b = label ^ 0x5851f42d4c957f2dULL;
    const std::uint64_t mixed = splitmix64(a) ^ std::rotl(splitmix64(b), 17);
    std::uint64_t c = mixed;
    return SeededRng(splitmix64(c));
}

SeededRng SeededRng::derive_substream(std::string_view label) const {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return derive_substream(h);
}

Coin coin(SeededRng& rng) {
    return (rng.next() >> 63) ? Coin::heads : Coin::tails;
}

std::uint64_t uniform_int(SeededRng& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("uniform_int: lo > hi");
    }
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) {
        return rng.next();
    }
    // Lemire's multiply-shift with rejection of the biased low region.
    u128 prod = static_cast<u128>(rng.next()) * span;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < span) {
        const std::uint64_t threshold = (0 - span) % span;
        while (low < threshold) {
            prod = static_cast<u128>(rng.next()) * span;
            low = static_cast<std::uint64_t>(prod);
        }
    }
    return lo + static_cast<std::uint64_t>(prod >> 64);
}

double uniform_real(SeededRng& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

double standard_normal(SeededRng& rng) {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform_real(rng);
    const double u2 = uniform_real(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

FySequence::FySequence(std::size_t n, SeededRng rng) : perm_(n), rng_(rng) {
    if (n == 0) {
        throw std::invalid_argument("FySequence requires n >= 1");
    }
    std::iota(perm_.begin(), perm_.end(), Vertex{0});
}

Vertex FySequence::next() {
    const std::size_t cursor = swaps_.size();
    if (cursor >= perm_.size()) {
        throw std::out_of_range("FySequence exhausted");
    }
    const auto j = static_cast<std::size_t>(uniform_int(rng_, cursor, perm_.size() - 1));
    std::swap(perm_[cursor], perm_[j]);
    swaps_.push_back(static_cast<Vertex>(j));
    return perm_[cursor];
}

void FySequence::rewind(SeededRng rng) {
    for (std::size_t k = swaps_.size(); k-- > 0;) {
        std::swap(perm_[k], perm_[swaps_[k]]);
    }
    swaps_.clear();
    rng_ = rng;
}

}  // namespace crtmst
