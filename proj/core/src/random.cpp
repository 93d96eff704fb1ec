#include "tlab/random.hpp"

#include <cassert>

namespace tlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream RandomStream::split(std::uint64_t stream_id) const {
    return RandomStream(splitmix64(splitmix64(seed_) ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    assert(bound > 0);
    // Rejection on the top of the range keeps the draw exactly uniform and
    // independent of the standard library's distribution implementation.
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return x % bound;
}

}  // namespace tlab
