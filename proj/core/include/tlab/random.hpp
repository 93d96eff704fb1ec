#pragma once

#include <cstdint>
#include <random>

namespace tlab {

/// Seeded stream with counter-based splitting: split(id) depends only on the
/// parent's seed and id, never on how much of the parent has been consumed.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    RandomStream split(std::uint64_t stream_id) const;

    std::uint64_t seed() const { return seed_; }

    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace tlab
