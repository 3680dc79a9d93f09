#include "steiner/rng.hpp"

namespace steiner {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

std::uint64_t SplitMix64::next() {
    state_ += kGamma;
    return mix(state_);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
        const std::uint64_t v = next();
        if (v <= limit) return v % bound;
    }
}

Rat SplitMix64::next_unit_rational() {
    const std::uint64_t hi = next();
    const std::uint64_t lo = next();
    mpz_class num(0);
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(hi), 0, 0, &hi);
    num <<= 64;
    mpz_class lo_z(0);
    mpz_import(lo_z.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &lo);
    num += lo_z;
    mpz_class den(1);
    den <<= 128;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return mix(root + kGamma * (index + 1));
}

}  // namespace steiner
