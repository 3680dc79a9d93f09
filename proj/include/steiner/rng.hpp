#pragma once

#include <cstdint>

#include "steiner/rational.hpp"

namespace steiner {

// splitmix64. Hand-rolled so that seeded streams are identical across
// platforms and standard libraries; reports depend on this.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Unbiased draw in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform rational in [0, 1) with 128 bits of resolution.
    Rat next_unit_rational();

private:
    std::uint64_t state_;
};

// Stable per-task seed derivation (trials, instances in a batch, ...).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

}  // namespace steiner
