#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sra/types.hpp"

namespace sra {

/// Seed for every randomized routine in the library. Defaults are drawn from
/// entropy but the value in use is always reported back to the caller.
struct RandomSeed {
    std::uint64_t value = 0;

    static RandomSeed from_entropy();
};

namespace rng {

/// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives the key of a child stream from a parent key and a counter word.
/// Keys depend only on the (root seed, word...) path, never on how many
/// values other streams consumed, so any iteration order and any number of
/// worker threads produce identical draws.
constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t word) noexcept {
    return mix64(key ^ (word * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
}

constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t a, std::uint64_t b) noexcept {
    return substream(substream(key, a), b);
}

constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c) noexcept {
    return substream(substream(substream(key, a), b), c);
}

/// Domain tags keeping unrelated consumers of one root seed independent.
enum Domain : std::uint64_t {
    kFillOut = 0x66696C6C,         // random completion of censored lists
    kNullPermutation = 0x7065726D, // H0 list shuffling
    kNullFill = 0x6E66696C,        // fill-outs inside an H0 null curve
    kReplicateList = 0x7265706C,   // curves computed from replicate list files
};

/// Counter-based deterministic stream: the splitmix64 sequence for a key.
class Stream {
public:
    explicit Stream(std::uint64_t key) noexcept : state_(key) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from {0, ..., bound-1} (Lemire's multiply-shift).
    std::uint64_t next_below(std::uint64_t bound) noexcept;

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> values) noexcept {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t state_;
};

/// Uniformly random permutation of 0..size-1.
std::vector<ItemId> random_permutation(ItemId size, Stream& stream);

}  // namespace rng
}  // namespace sra
