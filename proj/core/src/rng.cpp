#include "sra/rng.hpp"

#include <chrono>
#include <numeric>
#include <random>

namespace sra {

RandomSeed RandomSeed::from_entropy() {
    std::random_device device;
    std::uint64_t value = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    value ^= static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count());
    return RandomSeed{rng::mix64(value)};
}

namespace rng {

std::uint64_t Stream::next_below(std::uint64_t bound) noexcept {
    // Lemire's nearly-divisionless bounded draw.
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next();
            m = static_cast<unsigned __int128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::vector<ItemId> random_permutation(ItemId size, Stream& stream) {
    std::vector<ItemId> order(static_cast<std::size_t>(size));
    std::iota(order.begin(), order.end(), ItemId{0});
    stream.shuffle(std::span<ItemId>(order));
    return order;
}

}  // namespace rng
}  // namespace sra
